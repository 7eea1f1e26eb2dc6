#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string command = std::string(MIT_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir))
        out[entry.path().filename().string()] = slurp(entry.path());
    return out;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("mit_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string fixture = std::string(MIT_FIXTURE_DIR) + "/plate6x6.json";
const std::string small_fixture = std::string(MIT_FIXTURE_DIR) + "/plate2x2.json";

}  // namespace

TEST_CASE("spectrum on the single-loop fixture reports the scalar time constant") {
    TempDir tmp("spectrum");
    REQUIRE(run_cli("spectrum " + small_fixture + " -o " + (tmp.path / "out").string()) == 0);
    const std::string tsv = slurp(tmp.path / "out" / "spectrum.tsv");
    // Header plus exactly one mode row.
    CHECK(tsv.rfind("mode\ttau", 0) == 0);
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 2);
    CHECK(slurp(tmp.path / "out" / "summary.json").find("\"loop_count\": 1") !=
          std::string::npos);
}

TEST_CASE("identical scenario and seed give byte-identical outputs") {
    TempDir tmp("determinism");
    for (const std::string cmd : {"spectrum", "transfer", "simulate", "verify-mono"}) {
        REQUIRE(run_cli(cmd + " " + fixture + " -o " + (tmp.path / ("a_" + cmd)).string()) == 0);
        REQUIRE(run_cli(cmd + " " + fixture + " -o " + (tmp.path / ("b_" + cmd)).string() +
                        " --threads 3") == 0);
        CHECK(dir_contents(tmp.path / ("a_" + cmd)) == dir_contents(tmp.path / ("b_" + cmd)));
    }
}

TEST_CASE("reconstruct records the rigorous bounds on the shipped fixture") {
    TempDir tmp("reconstruct");
    REQUIRE(run_cli("reconstruct " + fixture + " -o " + (tmp.path / "out").string()) == 0);
    const std::string summary = slurp(tmp.path / "out" / "summary.json");
    CHECK(summary.find("\"anomaly_within_upper\": true") != std::string::npos);
    CHECK(summary.find("\"lower_within_anomaly\": true") != std::string::npos);
    CHECK(fs::exists(tmp.path / "out" / "indicators.tsv"));

    // Determinism including the reconstruction pipeline.
    REQUIRE(run_cli("reconstruct " + fixture + " -o " + (tmp.path / "out2").string() +
                    " --threads 4") == 0);
    CHECK(dir_contents(tmp.path / "out") == dir_contents(tmp.path / "out2"));
}

TEST_CASE("malformed scenario exits 2 and writes nothing") {
    TempDir tmp("badparse");
    const fs::path bad = tmp.path / "bad.json";
    std::ofstream(bad) << "{\"resistivity\": {}}";
    const fs::path out = tmp.path / "out";
    CHECK(run_cli("spectrum " + bad.string() + " -o " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));

    CHECK(run_cli("spectrum " + (tmp.path / "missing.json").string() + " -o " +
                  out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("out-of-domain evaluation exits 3 and writes nothing") {
    TempDir tmp("domain");
    // Rewrite the fixture with an evaluation point far below every pole.
    std::string doc = slurp(small_fixture);
    const auto pos = doc.find("\"run\": {");
    REQUIRE(pos != std::string::npos);
    doc.insert(pos + 8, "\"lambda_samples\": [-1e12], ");
    const fs::path patched = tmp.path / "patched.json";
    std::ofstream(patched) << doc;

    const fs::path out = tmp.path / "out";
    CHECK(run_cli("transfer " + patched.string() + " -o " + out.string()) == 3);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("unknown subcommand and missing arguments exit 2") {
    CHECK(run_cli("frobnicate " + fixture) == 2);
    CHECK(run_cli("transfer") == 2);
}

// Command-line front end. Thin wrapper over the shared-library C API: one
// scenario file in, one result directory out.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mit/mit.h"

namespace {

int exit_code_of(mit_status status) {
    switch (status) {
        case MIT_OK: return 0;
        case MIT_ERR_ARGUMENT: return 2;
        case MIT_ERR_PARSE: return 2;
        case MIT_ERR_DOMAIN: return 3;
        case MIT_ERR_NUMERIC: return 4;
    }
    return 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("mit ") + mit_version() +
                 " - loop-network induction tomography forward model and "
                 "monotonicity imaging"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    int threads = 0;

    const char* names[] = {"spectrum", "transfer", "simulate", "verify-mono", "reconstruct"};
    const char* blurbs[] = {
        "Time constants and modal quantities of the scenario",
        "Transfer matrices at the configured evaluation points",
        "Exponential-source time-domain measurement",
        "Loewner ordering of background vs. perturbed transfer matrices",
        "Non-iterative anomaly bounds from test-element comparisons"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
        sub->add_option("-o,--out", out_dir, "Output directory (default: out)");
        sub->add_option("-t,--threads", threads, "Worker threads (overrides run.threads)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    const mit_status status =
        mit_run(subcommand.c_str(), scenario_path.c_str(), out_dir.c_str(), threads);
    if (status != MIT_OK) {
        std::fprintf(stderr, "error: %s\n", mit_last_error());
        return exit_code_of(status);
    }
    return 0;
}

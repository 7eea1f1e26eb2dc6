#include "core/scenario_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace mit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError(path + ": " + message);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) fail(path + "." + item.key(), "unknown key");
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

std::uint64_t as_uint64(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        fail(path, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::vector<double> as_number_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

GridSpec parse_grid(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"nx", "ny", "h", "d", "origin"});
    GridSpec g;
    g.nx = as_int(require(obj, path, "nx"), path + ".nx");
    g.ny = as_int(require(obj, path, "ny"), path + ".ny");
    g.cell_size = as_number(require(obj, path, "h"), path + ".h");
    g.thickness = as_number(require(obj, path, "d"), path + ".d");
    if (obj.contains("origin")) {
        const auto origin = as_number_array(obj["origin"], path + ".origin");
        if (origin.size() != 2) fail(path + ".origin", "expected [x, y]");
        g.origin = {origin[0], origin[1]};
    }
    if (g.nx < 2 || g.ny < 2) fail(path, "grid dimensions too small: need nx, ny >= 2");
    if (!(g.cell_size > 0.0) || !std::isfinite(g.cell_size)) fail(path + ".h", "must be > 0");
    if (!(g.thickness > 0.0) || !std::isfinite(g.thickness)) fail(path + ".d", "must be > 0");
    return g;
}

InclusionSpec parse_inclusion(const json& obj, const GridSpec& grid, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"rect", "cells", "value"});
    InclusionSpec inc;
    inc.value = as_number(require(obj, path, "value"), path + ".value");
    if (!(inc.value > 0.0) || !std::isfinite(inc.value))
        fail(path + ".value", "resistivity must be positive and finite");
    const bool has_rect = obj.contains("rect");
    const bool has_cells = obj.contains("cells");
    if (has_rect == has_cells) fail(path, "exactly one of 'rect' or 'cells' required");
    if (has_rect) {
        const auto r = as_number_array(obj["rect"], path + ".rect");
        if (r.size() != 4) fail(path + ".rect", "expected [x0, y0, w, h]");
        std::array<int, 4> rect;
        for (int i = 0; i < 4; ++i) {
            rect[static_cast<std::size_t>(i)] = static_cast<int>(r[static_cast<std::size_t>(i)]);
            if (r[static_cast<std::size_t>(i)] != rect[static_cast<std::size_t>(i)])
                fail(path + ".rect", "entries must be integers");
        }
        if (rect[0] < 0 || rect[1] < 0 || rect[2] < 1 || rect[3] < 1 ||
            rect[0] + rect[2] > grid.nx || rect[1] + rect[3] > grid.ny)
            fail(path + ".rect", "block outside the grid");
        inc.rect = rect;
    } else {
        if (!obj["cells"].is_array()) fail(path + ".cells", "expected an array");
        for (std::size_t i = 0; i < obj["cells"].size(); ++i) {
            const int cell =
                as_int(obj["cells"][i], path + ".cells[" + std::to_string(i) + "]");
            if (cell < 0 || cell >= grid.cell_count())
                fail(path + ".cells[" + std::to_string(i) + "]", "cell index out of range");
            inc.cells.push_back(cell);
        }
    }
    return inc;
}

std::vector<int> inclusion_cell_list(const InclusionSpec& inc, const GridSpec& grid) {
    if (inc.rect) {
        std::vector<int> cells;
        for (int b = (*inc.rect)[1]; b < (*inc.rect)[1] + (*inc.rect)[3]; ++b)
            for (int a = (*inc.rect)[0]; a < (*inc.rect)[0] + (*inc.rect)[2]; ++a)
                cells.push_back(grid.cell_index(a, b));
        return cells;
    }
    return inc.cells;
}

CoilSpec parse_coil(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"vertices"});
    const json& verts = require(obj, path, "vertices");
    if (!verts.is_array()) fail(path + ".vertices", "expected an array of [x, y, z]");
    CoilSpec coil;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto v = as_number_array(verts[i], path + ".vertices[" + std::to_string(i) + "]");
        if (v.size() != 3) fail(path + ".vertices[" + std::to_string(i) + "]", "expected [x, y, z]");
        coil.vertices.push_back({v[0], v[1], v[2]});
    }
    return coil;
}

BlockSpec parse_block(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"w", "h", "stride"});
    BlockSpec b;
    b.w = as_int(require(obj, path, "w"), path + ".w");
    b.h = as_int(require(obj, path, "h"), path + ".h");
    b.stride = as_int(require(obj, path, "stride"), path + ".stride");
    if (b.w < 1 || b.h < 1 || b.stride < 1) fail(path, "block fields must be >= 1");
    if (b.stride > std::min(b.w, b.h)) fail(path + ".stride", "must not exceed the block size");
    return b;
}

SimulateSpec parse_simulate(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"lambda", "pattern", "t_max", "samples"});
    SimulateSpec s;
    if (obj.contains("lambda")) s.lambda = as_number(obj["lambda"], path + ".lambda");
    if (obj.contains("pattern")) s.pattern = as_number_array(obj["pattern"], path + ".pattern");
    if (obj.contains("t_max")) {
        s.t_max = as_number(obj["t_max"], path + ".t_max");
        if (!(*s.t_max > 0.0)) fail(path + ".t_max", "must be > 0");
    }
    if (obj.contains("samples")) {
        s.samples = as_int(obj["samples"], path + ".samples");
        if (*s.samples < 2) fail(path + ".samples", "must be >= 2");
    }
    return s;
}

RunSpec parse_run(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path,
                        {"lambda_samples", "tol", "seed", "noise_delta",
                         "sign_convention_override", "wire_radius", "threads", "simulate"});
    RunSpec r;
    if (obj.contains("lambda_samples"))
        r.lambda_samples = as_number_array(obj["lambda_samples"], path + ".lambda_samples");
    if (obj.contains("tol")) {
        r.tol = as_number(obj["tol"], path + ".tol");
        if (!(*r.tol >= 0.0)) fail(path + ".tol", "must be >= 0");
    }
    if (obj.contains("seed")) r.seed = as_uint64(obj["seed"], path + ".seed");
    if (obj.contains("noise_delta")) {
        r.noise_delta = as_number(obj["noise_delta"], path + ".noise_delta");
        if (!(r.noise_delta >= 0.0)) fail(path + ".noise_delta", "must be >= 0");
    }
    if (obj.contains("sign_convention_override")) {
        r.sign_convention_override =
            as_int(obj["sign_convention_override"], path + ".sign_convention_override");
        if (*r.sign_convention_override != 1 && *r.sign_convention_override != -1)
            fail(path + ".sign_convention_override", "must be +1 or -1");
    }
    if (obj.contains("wire_radius")) {
        r.wire_radius = as_number(obj["wire_radius"], path + ".wire_radius");
        if (!(*r.wire_radius > 0.0)) fail(path + ".wire_radius", "must be > 0");
    }
    if (obj.contains("threads")) {
        r.threads = as_int(obj["threads"], path + ".threads");
        if (r.threads < 1) fail(path + ".threads", "must be >= 1");
    }
    if (obj.contains("simulate")) r.simulate = parse_simulate(obj["simulate"], path + ".simulate");
    return r;
}

void cross_validate(const ScenarioConfig& cfg) {
    // Duplicate inclusion support (within or across entries) is rejected.
    std::set<int> seen;
    for (std::size_t i = 0; i < cfg.inclusions.size(); ++i) {
        for (int cell : inclusion_cell_list(cfg.inclusions[i], cfg.grid)) {
            if (!seen.insert(cell).second)
                fail("resistivity.inclusions[" + std::to_string(i) + "]",
                     "duplicate inclusion cell " + std::to_string(cell));
        }
    }
    if (cfg.run.wire_radius && !(*cfg.run.wire_radius < 0.5 * cfg.grid.cell_size))
        fail("run.wire_radius", "must be below half the branch length (cell size / 2)");

    Scenario s = to_scenario(cfg);
    try {
        validate_scenario(s);
    } catch (const Error& e) {
        fail("scenario", e.what());
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    if (!doc.is_object()) fail("scenario", "top level must be an object");
    reject_unknown_keys(doc, "scenario", {"grid", "resistivity", "coils", "run", "imaging"});

    ScenarioConfig cfg;
    cfg.grid = parse_grid(require(doc, "scenario", "grid"), "grid");

    const json& res = require(doc, "scenario", "resistivity");
    if (!res.is_object()) fail("resistivity", "expected an object");
    reject_unknown_keys(res, "resistivity", {"background", "inclusions"});
    cfg.background = as_number(require(res, "resistivity", "background"), "resistivity.background");
    if (!(cfg.background > 0.0) || !std::isfinite(cfg.background))
        fail("resistivity.background", "resistivity must be positive and finite");
    if (res.contains("inclusions")) {
        if (!res["inclusions"].is_array()) fail("resistivity.inclusions", "expected an array");
        for (std::size_t i = 0; i < res["inclusions"].size(); ++i)
            cfg.inclusions.push_back(
                parse_inclusion(res["inclusions"][i], cfg.grid,
                                "resistivity.inclusions[" + std::to_string(i) + "]"));
    }

    const json& coils = require(doc, "scenario", "coils");
    if (!coils.is_array() || coils.empty()) fail("coils", "expected a nonempty array");
    for (std::size_t i = 0; i < coils.size(); ++i)
        cfg.coils.push_back(parse_coil(coils[i], "coils[" + std::to_string(i) + "]"));

    if (doc.contains("run")) cfg.run = parse_run(doc["run"], "run");
    if (doc.contains("imaging")) {
        const json& img = doc["imaging"];
        if (!img.is_object()) fail("imaging", "expected an object");
        reject_unknown_keys(img, "imaging", {"test_block", "candidate_block"});
        if (img.contains("test_block"))
            cfg.imaging.test_block = parse_block(img["test_block"], "imaging.test_block");
        if (img.contains("candidate_block"))
            cfg.imaging.candidate_block =
                parse_block(img["candidate_block"], "imaging.candidate_block");
    }

    cross_validate(cfg);
    return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

std::string render_scenario(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"grid\": {\"nx\": " << cfg.grid.nx << ", \"ny\": " << cfg.grid.ny
        << ", \"h\": " << fmt_double(cfg.grid.cell_size)
        << ", \"d\": " << fmt_double(cfg.grid.thickness) << ", \"origin\": ["
        << fmt_double(cfg.grid.origin[0]) << ", " << fmt_double(cfg.grid.origin[1]) << "]},\n";

    out << "  \"resistivity\": {\"background\": " << fmt_double(cfg.background);
    out << ", \"inclusions\": [";
    for (std::size_t i = 0; i < cfg.inclusions.size(); ++i) {
        const InclusionSpec& inc = cfg.inclusions[i];
        if (i) out << ", ";
        out << "{";
        if (inc.rect) {
            out << "\"rect\": [" << (*inc.rect)[0] << ", " << (*inc.rect)[1] << ", "
                << (*inc.rect)[2] << ", " << (*inc.rect)[3] << "]";
        } else {
            out << "\"cells\": [";
            for (std::size_t k = 0; k < inc.cells.size(); ++k)
                out << (k ? ", " : "") << inc.cells[k];
            out << "]";
        }
        out << ", \"value\": " << fmt_double(inc.value) << "}";
    }
    out << "]},\n";

    out << "  \"coils\": [";
    for (std::size_t c = 0; c < cfg.coils.size(); ++c) {
        if (c) out << ", ";
        out << "{\"vertices\": [";
        for (std::size_t i = 0; i < cfg.coils[c].vertices.size(); ++i) {
            const auto& v = cfg.coils[c].vertices[i];
            out << (i ? ", " : "") << "[" << fmt_double(v[0]) << ", " << fmt_double(v[1])
                << ", " << fmt_double(v[2]) << "]";
        }
        out << "]}";
    }
    out << "],\n";

    out << "  \"run\": {";
    bool first = true;
    const auto field = [&](const std::string& text) {
        out << (first ? "" : ", ") << text;
        first = false;
    };
    if (!cfg.run.lambda_samples.empty()) {
        std::string t = "\"lambda_samples\": [";
        for (std::size_t i = 0; i < cfg.run.lambda_samples.size(); ++i)
            t += (i ? ", " : "") + fmt_double(cfg.run.lambda_samples[i]);
        field(t + "]");
    }
    if (cfg.run.tol) field("\"tol\": " + fmt_double(*cfg.run.tol));
    field("\"seed\": " + std::to_string(cfg.run.seed));
    field("\"noise_delta\": " + fmt_double(cfg.run.noise_delta));
    if (cfg.run.sign_convention_override)
        field("\"sign_convention_override\": " + fmt_int(*cfg.run.sign_convention_override));
    if (cfg.run.wire_radius) field("\"wire_radius\": " + fmt_double(*cfg.run.wire_radius));
    field("\"threads\": " + fmt_int(cfg.run.threads));
    {
        const SimulateSpec& s = cfg.run.simulate;
        if (s.lambda || !s.pattern.empty() || s.t_max || s.samples) {
            std::string t = "\"simulate\": {";
            bool sfirst = true;
            const auto sub = [&](const std::string& text) {
                t += (sfirst ? "" : ", ") + text;
                sfirst = false;
            };
            if (s.lambda) sub("\"lambda\": " + fmt_double(*s.lambda));
            if (!s.pattern.empty()) {
                std::string p = "\"pattern\": [";
                for (std::size_t i = 0; i < s.pattern.size(); ++i)
                    p += (i ? ", " : "") + fmt_double(s.pattern[i]);
                sub(p + "]");
            }
            if (s.t_max) sub("\"t_max\": " + fmt_double(*s.t_max));
            if (s.samples) sub("\"samples\": " + fmt_int(*s.samples));
            field(t + "}");
        }
    }
    out << "},\n";

    const auto block = [&](const BlockSpec& b) {
        return "{\"w\": " + std::to_string(b.w) + ", \"h\": " + std::to_string(b.h) +
               ", \"stride\": " + std::to_string(b.stride) + "}";
    };
    out << "  \"imaging\": {\"test_block\": " << block(cfg.imaging.test_block)
        << ", \"candidate_block\": " << block(cfg.imaging.candidate_block) << "}\n";
    out << "}\n";
    return out.str();
}

Scenario to_scenario(const ScenarioConfig& cfg) {
    ResistivityMap eta;
    eta.values.assign(static_cast<std::size_t>(cfg.grid.cell_count()), cfg.background);
    for (const InclusionSpec& inc : cfg.inclusions)
        for (int cell : inclusion_cell_list(inc, cfg.grid))
            eta.values[static_cast<std::size_t>(cell)] = inc.value;
    return Scenario{cfg.grid, std::move(eta), to_coil_set(cfg)};
}

Scenario background_scenario(const ScenarioConfig& cfg) {
    ResistivityMap eta;
    eta.values.assign(static_cast<std::size_t>(cfg.grid.cell_count()), cfg.background);
    return Scenario{cfg.grid, std::move(eta), to_coil_set(cfg)};
}

CellSet anomaly_cells(const ScenarioConfig& cfg) {
    std::vector<int> cells;
    for (const InclusionSpec& inc : cfg.inclusions)
        for (int cell : inclusion_cell_list(inc, cfg.grid)) cells.push_back(cell);
    return make_cell_set(std::move(cells), cfg.grid);
}

CoilSet to_coil_set(const ScenarioConfig& cfg) {
    CoilSet set;
    for (const CoilSpec& c : cfg.coils) {
        Coil coil;
        for (const auto& v : c.vertices) coil.vertices.emplace_back(v[0], v[1], v[2]);
        set.coils.push_back(std::move(coil));
    }
    return set;
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string text = render_scenario(cfg);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
    return buf;
}

}  // namespace mit

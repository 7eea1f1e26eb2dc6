#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace mit {

// Parsed scenario document. Sections: grid, resistivity, coils, and the
// optional run/imaging blocks. Unknown keys are rejected.
struct InclusionSpec {
    std::optional<std::array<int, 4>> rect;  // x0, y0, w, h in cells
    std::vector<int> cells;                  // explicit cell list (when rect absent)
    double value = 0.0;

    bool operator==(const InclusionSpec&) const = default;
};

struct BlockSpec {
    int w = 2;
    int h = 2;
    int stride = 1;

    bool operator==(const BlockSpec&) const = default;
};

struct SimulateSpec {
    std::optional<double> lambda;       // default +1/tau_1 of the scenario
    std::vector<double> pattern;        // default: unit current in coil 0
    std::optional<double> t_max;        // default tau_1 * ln(1e8)
    std::optional<int> samples;         // default 200

    bool operator==(const SimulateSpec&) const = default;
};

struct RunSpec {
    std::vector<double> lambda_samples;            // empty -> derived default
    std::optional<double> tol;                     // absolute PSD tolerance
    std::uint64_t seed = 0;
    double noise_delta = 0.0;                      // relative spectral-norm bound
    std::optional<int> sign_convention_override;   // +1 or -1
    std::optional<double> wire_radius;             // default cell_size/4
    int threads = 1;
    SimulateSpec simulate;

    bool operator==(const RunSpec&) const = default;
};

struct ImagingSpec {
    BlockSpec test_block{2, 2, 1};
    BlockSpec candidate_block{3, 3, 1};

    bool operator==(const ImagingSpec&) const = default;
};

struct CoilSpec {
    std::vector<std::array<double, 3>> vertices;

    bool operator==(const CoilSpec&) const = default;
};

struct ScenarioConfig {
    GridSpec grid;
    double background = 0.0;
    std::vector<InclusionSpec> inclusions;
    std::vector<CoilSpec> coils;
    RunSpec run;
    ImagingSpec imaging;

    bool operator==(const ScenarioConfig&) const = default;
};

// Parse and fully validate a scenario document; errors carry the failing
// field path.
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario_file(const std::string& path);

// Canonical rendering: fixed key order, 17-significant-digit floats.
// parse(render(config)) == config for every valid config.
std::string render_scenario(const ScenarioConfig& cfg);

// Materialized objects.
Scenario to_scenario(const ScenarioConfig& cfg);          // with inclusions applied
Scenario background_scenario(const ScenarioConfig& cfg);  // uniform background
CellSet anomaly_cells(const ScenarioConfig& cfg);         // union of inclusion cells
CoilSet to_coil_set(const ScenarioConfig& cfg);

// FNV-1a 64-bit hash of the canonical rendering, hex encoded.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace mit

#pragma once

// Seeded scenario generation shared by the property tests and the acceptance
// suite.

#include <cstdint>
#include <utility>

#include "core/geometry.hpp"
#include "core/noise.hpp"

namespace mit::test {

struct ScenarioParams {
    int min_n = 3;
    int max_n = 8;
    int min_coils = 1;
    int max_coils = 4;
    double cell_size = 0.01;
    double thickness = 0.001;
    double eta_low = 1e-6;
    double eta_high = 1e-5;
};

// Random plate + log-uniform resistivity + rectangular pickup coils floating
// above the plate.
Scenario random_scenario(std::uint64_t seed, const ScenarioParams& params = {});

// Same grid and coils, with beta >= alpha entrywise and strictly larger on a
// random nonempty cell subset.
std::pair<Scenario, Scenario> random_ordered_pair(std::uint64_t seed,
                                                  const ScenarioParams& params = {});

int random_int(NormalRng& rng, int lo, int hi);  // inclusive bounds

}  // namespace mit::test

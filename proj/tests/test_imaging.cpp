#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "core/errors.hpp"
#include "core/imaging.hpp"
#include "core/scenario_io.hpp"
#include "core/spectral.hpp"
#include "support/random_scenario.hpp"

using namespace mit;

namespace {

// Shared imaging fixture: 6x6 plate, 10x resistivity contrast, 2x2 anomaly
// block at (2, 2), four pickup coils above the quadrants.
struct ImagingFixture {
    GridSpec grid = build_grid(6, 6, 0.01, 0.001);
    CoilSet coils;
    CellSet anomaly;
    ImagingConfig config;

    ImagingFixture() {
        const double z = 0.008;
        const auto rect = [&](double x0, double y0, double x1, double y1) {
            Coil c;
            c.vertices = {{x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z}, {x0, y0, z}};
            return c;
        };
        coils.coils = {rect(0.004, 0.004, 0.028, 0.028), rect(0.032, 0.004, 0.056, 0.028),
                       rect(0.004, 0.032, 0.028, 0.056), rect(0.032, 0.032, 0.056, 0.056),
                       rect(0.014, 0.014, 0.046, 0.046)};

        anomaly = make_cell_set({14, 15, 20, 21}, grid);  // rows 2-3, cols 2-3

        config.eta_bg = 1e-6;
        config.eta_i = 1e-5;
        config.seed = 2024;
        config.test_elements = cover_with_test_elements(grid, 2, 2, 1);
        config.candidates = cover_with_test_elements(grid, 3, 3, 1);
    }

    Scenario anomaly_scenario() const {
        return Scenario{grid, make_inclusion_map(grid, config.eta_bg, anomaly, config.eta_i),
                        coils};
    }
};

}  // namespace

TEST_CASE("measure_anomaly basics") {
    const ImagingFixture fx;
    const std::vector<double> lambdas{1e4, 1e5};

    SUBCASE("empty anomaly equals the background response") {
        const Scenario bg{fx.grid, make_inclusion_map(fx.grid, 1e-6, CellSet{}, 1e-5),
                          fx.coils};
        const Scenario empty{fx.grid, make_inclusion_map(fx.grid, 1e-6, CellSet{}, 1e-5),
                             fx.coils};
        const auto a = measure_anomaly(bg, lambdas, 0.0, 1);
        const auto b = measure_anomaly(empty, lambdas, 0.0, 99);
        for (std::size_t k = 0; k < lambdas.size(); ++k) CHECK(a[k].H == b[k].H);
    }

    SUBCASE("seeded noise is reproducible and norm-bounded") {
        const Scenario s = fx.anomaly_scenario();
        const auto clean = measure_anomaly(s, lambdas, 0.0, 7);
        const auto n1 = measure_anomaly(s, lambdas, 1e-3, 7);
        const auto n2 = measure_anomaly(s, lambdas, 1e-3, 7);
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            CHECK(n1[k].H == n2[k].H);  // bit identical
            const double delta = 1e-3 * spectral_norm(clean[k].H);
            CHECK(spectral_norm(n1[k].H - clean[k].H) <= delta * (1.0 + 1e-12));
            CHECK(spectral_norm(n1[k].H - clean[k].H) > 0.0);
        }
    }

    SUBCASE("argument checks") {
        CHECK_THROWS_AS(measure_anomaly(fx.anomaly_scenario(), {}, 0.0, 1), ArgumentError);
        CHECK_THROWS_AS(measure_anomaly(fx.anomaly_scenario(), {1e4}, -0.5, 1),
                        ArgumentError);
        CHECK_THROWS_AS(measure_anomaly(fx.anomaly_scenario(), {-1e12}, 0.0, 1), DomainError);
    }
}

TEST_CASE("indicator margins on the shipped fixture") {
    const ImagingFixture fx;
    const ReconstructionResult result =
        reconstruct(fx.grid, fx.coils, fx.anomaly, fx.config);

    // Locate characteristic elements in the stride-1 cover of 2x2 blocks.
    int exact_index = -1;
    int disjoint_index = -1;
    for (std::size_t j = 0; j < fx.config.test_elements.size(); ++j) {
        if (fx.config.test_elements[j] == fx.anomaly) exact_index = static_cast<int>(j);
        if (cells_intersection({fx.config.test_elements[j], fx.anomaly}, fx.grid)
                .cells.empty() &&
            disjoint_index < 0)
            disjoint_index = static_cast<int>(j);
    }
    REQUIRE(exact_index >= 0);
    REQUIRE(disjoint_index >= 0);

    SUBCASE("equality case passes with near-zero margins") {
        for (std::size_t k = 0; k < result.lambdas.size(); ++k) {
            const IndicatorRow& row = result.test_table.at(exact_index, static_cast<int>(k));
            CHECK(row.pass);
            CHECK(row.margin >= -row.tol);
        }
    }

    SUBCASE("contained single cells pass everywhere") {
        for (int cell : fx.anomaly.cells) {
            const auto cover1 = cover_with_test_elements(fx.grid, 1, 1, 1);
            ImagingConfig cfg = fx.config;
            cfg.test_elements = {cover1[static_cast<std::size_t>(cell)]};
            cfg.candidates = {};
            const ReconstructionResult r = reconstruct(fx.grid, fx.coils, fx.anomaly, cfg);
            for (const IndicatorRow& row : r.test_table.rows) CHECK(row.pass);
        }
    }

    SUBCASE("a disjoint element fails at some sample (observed sharpness)") {
        bool fails_somewhere = false;
        for (std::size_t k = 0; k < result.lambdas.size(); ++k)
            if (!result.test_table.at(disjoint_index, static_cast<int>(k)).pass)
                fails_somewhere = true;
        CHECK(fails_somewhere);
    }
}

TEST_CASE("upper reconstruction is a rigorous bound on the fixture") {
    const ImagingFixture fx;
    const ReconstructionResult result =
        reconstruct(fx.grid, fx.coils, fx.anomaly, fx.config);

    CHECK(fx.anomaly.subset_of(result.upper));

    SUBCASE("single-sample rule contains the all-sample rule") {
        for (std::size_t k = 0; k < result.lambdas.size(); ++k) {
            const CellSet single = reconstruct_upper(result.test_table,
                                                     fx.config.test_elements,
                                                     static_cast<int>(k));
            CHECK(result.upper.subset_of(single));
            CHECK(fx.anomaly.subset_of(single));
        }
    }

    SUBCASE("degenerate tolerance keeps every element") {
        ImagingConfig cfg = fx.config;
        cfg.tol_abs = 1e300;
        const ReconstructionResult r = reconstruct(fx.grid, fx.coils, fx.anomaly, cfg);
        CHECK(static_cast<int>(r.upper.cells.size()) == fx.grid.cell_count());
    }
}

TEST_CASE("lower reconstruction is a rigorous bound on the fixture") {
    const ImagingFixture fx;
    const ReconstructionResult result =
        reconstruct(fx.grid, fx.coils, fx.anomaly, fx.config);

    SUBCASE("intersection of dominating candidates sits inside the anomaly") {
        CHECK(result.lower.subset_of(fx.anomaly));
        for (std::size_t k = 0; k < result.lambdas.size(); ++k) {
            const CellSet single = reconstruct_lower(result.candidate_table,
                                                     fx.config.candidates, fx.grid,
                                                     static_cast<int>(k));
            CHECK(single.subset_of(fx.anomaly));
        }
    }

    SUBCASE("the whole domain as the only candidate is returned unchanged") {
        std::vector<int> all(static_cast<std::size_t>(fx.grid.cell_count()));
        for (int i = 0; i < fx.grid.cell_count(); ++i) all[static_cast<std::size_t>(i)] = i;
        ImagingConfig cfg = fx.config;
        cfg.test_elements = {};
        cfg.candidates = {CellSet{all}};
        const ReconstructionResult r = reconstruct(fx.grid, fx.coils, fx.anomaly, cfg);
        CHECK(static_cast<int>(r.lower.cells.size()) == fx.grid.cell_count());
    }

    SUBCASE("degenerate tolerance intersects all candidates") {
        ImagingConfig cfg = fx.config;
        cfg.tol_abs = 1e300;
        const ReconstructionResult r = reconstruct(fx.grid, fx.coils, fx.anomaly, cfg);
        CHECK(r.lower == cells_intersection(fx.config.candidates, fx.grid));
    }
}

TEST_CASE("noise with matching tolerance loses no true positives") {
    const ImagingFixture fx;
    const ReconstructionResult clean = reconstruct(fx.grid, fx.coils, fx.anomaly, fx.config);

    ImagingConfig noisy_cfg = fx.config;
    noisy_cfg.noise_delta = 1e-3;
    const ReconstructionResult noisy =
        reconstruct(fx.grid, fx.coils, fx.anomaly, noisy_cfg);

    CHECK(fx.anomaly.subset_of(noisy.upper));
    for (int e = 0; e < clean.test_table.element_count; ++e) {
        bool clean_pass = true;
        bool noisy_pass = true;
        for (std::size_t k = 0; k < clean.lambdas.size(); ++k) {
            clean_pass = clean_pass && clean.test_table.at(e, static_cast<int>(k)).pass;
            noisy_pass = noisy_pass && noisy.test_table.at(e, static_cast<int>(k)).pass;
        }
        if (clean_pass) CHECK(noisy_pass);
    }
    CHECK(clean.upper.subset_of(noisy.upper));
}

TEST_CASE("pole bookkeeping: the background pole dominates every inclusion pole") {
    const ImagingFixture fx;
    const ReconstructionResult result =
        reconstruct(fx.grid, fx.coils, fx.anomaly, fx.config);
    CHECK(result.threshold_pole == result.pole_background);
    CHECK(result.pole_full_inclusion <= result.pole_background);
    for (double p : result.element_poles) CHECK(p <= result.pole_background);
    for (double p : result.candidate_poles) CHECK(p <= result.pole_background);
    for (double lambda : result.lambdas) CHECK(lambda > result.threshold_pole);
}

TEST_CASE("imaging configuration validation") {
    const ImagingFixture fx;
    ImagingConfig bad = fx.config;
    bad.eta_i = bad.eta_bg;  // no contrast
    CHECK_THROWS_AS(reconstruct(fx.grid, fx.coils, fx.anomaly, bad), ArgumentError);

    ImagingConfig below = fx.config;
    below.lambda_samples = {-1e12};
    CHECK_THROWS_AS(reconstruct(fx.grid, fx.coils, fx.anomaly, below), DomainError);
}

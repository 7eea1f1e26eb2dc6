#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "core/assembly.hpp"
#include "core/errors.hpp"
#include "core/monotonicity.hpp"
#include "core/noise.hpp"
#include "core/spectral.hpp"
#include "core/transfer.hpp"
#include "support/random_scenario.hpp"

using namespace mit;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Eigen::MatrixXd random_spd(int n, NormalRng& rng, double shift = 0.5) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    return G * G.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("loewner_compare on diagonal examples") {
    CHECK(loewner_compare(diag2(1, 1), diag2(1, 1), 0.0).relation == LoewnerRelation::equal);
    CHECK(loewner_compare(diag2(1, 1), diag2(2, 2), 0.0).relation == LoewnerRelation::leq);
    CHECK(loewner_compare(diag2(2, 2), diag2(1, 1), 0.0).relation == LoewnerRelation::geq);
    CHECK(loewner_compare(diag2(1, 2), diag2(2, 1), 0.0).relation ==
          LoewnerRelation::incomparable);

    const LoewnerVerdict v = loewner_compare(diag2(1, 1), diag2(2, 3), 0.0);
    CHECK(v.min_eig_diff == doctest::Approx(1.0));
    CHECK(v.min_eig_diff_rev == doctest::Approx(-2.0));

    CHECK_THROWS_AS(loewner_compare(diag2(1, 1), Eigen::MatrixXd::Identity(3, 3), 0.0),
                    ArgumentError);
    CHECK_THROWS_AS(loewner_compare(diag2(1, 1), diag2(1, 1), -1.0), ArgumentError);
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, -0.5, 1.0;
    CHECK_THROWS_AS(loewner_compare(asym, diag2(1, 1), 0.0), ArgumentError);
}

TEST_CASE("lemma suite on scalar multiples of the identity") {
    NormalRng rng(71);
    Eigen::MatrixXd B(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) B(i, j) = rng.normal();
    const auto rep = check_lemma_suite(Eigen::MatrixXd::Identity(3, 3),
                                       2.0 * Eigen::MatrixXd::Identity(3, 3), B,
                                       Eigen::MatrixXd::Zero(3, 3));
    CHECK(rep.ok());
    CHECK(rep.input_relation == LoewnerRelation::leq);
    CHECK(rep.margin_order == doctest::Approx(1.0));
    CHECK(rep.margin_inverse == doctest::Approx(0.5));
}

TEST_CASE("lemma suite on constructed random orderings") {
    NormalRng rng(72);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = mit::test::random_int(rng, 2, 7);
        const Eigen::MatrixXd A1 = random_spd(n, rng);
        Eigen::MatrixXd G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
        const Eigen::MatrixXd A2 = A1 + G * G.transpose();
        Eigen::MatrixXd B(n, mit::test::random_int(rng, 1, n));
        for (int i = 0; i < B.rows(); ++i)
            for (int j = 0; j < B.cols(); ++j) B(i, j) = rng.normal();
        Eigen::MatrixXd C = random_spd(n, rng) - random_spd(n, rng);
        C = 0.5 * (C + C.transpose()).eval();

        const auto rep = check_lemma_suite(A1, A2, B, C);
        CHECK(rep.ok());
        CHECK((rep.input_relation == LoewnerRelation::leq ||
               rep.input_relation == LoewnerRelation::equal));
    }
}

TEST_CASE("lemma suite congruence with a singular B stays PSD") {
    NormalRng rng(73);
    const Eigen::MatrixXd A1 = random_spd(4, rng);
    Eigen::MatrixXd G(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G(i, j) = rng.normal();
    const Eigen::MatrixXd A2 = A1 + G * G.transpose();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, 3);
    B.col(0).setOnes();  // rank one
    const auto rep = check_lemma_suite(A1, A2, B, Eigen::MatrixXd::Zero(4, 4));
    CHECK(rep.ok());
    CHECK(rep.margin_congruence >= -rep.tol_congruence);
}

TEST_CASE("lemma suite rejects singular input") {
    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(3, 3);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(check_lemma_suite(singular, Eigen::MatrixXd::Identity(3, 3),
                                      Eigen::MatrixXd::Identity(3, 3),
                                      Eigen::MatrixXd::Zero(3, 3)),
                    NumericError);
}

namespace {

// Canonical 4x4 polarity experiment: uniform background vs one bumped cell.
struct CanonicalPair {
    Scenario alpha, beta;

    CanonicalPair() {
        const GridSpec grid = build_grid(4, 4, 0.01, 0.001);
        CoilSet coils;
        Coil coil;
        coil.vertices = {{0.005, 0.005, 0.012}, {0.035, 0.005, 0.012},
                         {0.035, 0.035, 0.012}, {0.005, 0.035, 0.012},
                         {0.005, 0.005, 0.012}};
        coils.coils.push_back(coil);
        coil.vertices = {{0.0, 0.011, 0.02}, {0.018, 0.011, 0.02}, {0.018, 0.028, 0.02},
                         {0.0, 0.028, 0.02}, {0.0, 0.011, 0.02}};
        coils.coils.push_back(coil);

        alpha = Scenario{grid, make_inclusion_map(grid, 1e-6, CellSet{}, 1e-5), coils};
        beta = Scenario{grid, make_inclusion_map(grid, 1e-6, make_cell_set({5}, grid), 1e-5),
                        coils};
    }
};

}  // namespace

TEST_CASE("polarity experiment fixes the global sign convention") {
    const CanonicalPair pair;
    const std::vector<double> lambdas{1e3, 1e4, 1e5};

    // With polarity +1 the transfer matrix is Loewner-decreasing in the
    // resistivity, so the ordered pair comes out GEQ...
    const MonotonicityReport plus =
        verify_main_theorem(pair.alpha, pair.beta, lambdas, 1e-12, {}, +1);
    for (const auto& e : plus.entries) {
        CHECK(e.verdict.relation == LoewnerRelation::geq);
        CHECK(e.verdict.min_eig_diff_rev > 0.0);  // strict margin
    }

    // ...hence the library default is -1, which reports the increasing
    // direction (alpha below beta).
    CHECK(kSignConvention == -1);
    const MonotonicityReport fixed = verify_main_theorem(pair.alpha, pair.beta, lambdas);
    CHECK(fixed.consistent);
    for (const auto& e : fixed.entries) {
        CHECK(e.verdict.relation == LoewnerRelation::leq);
        CHECK(e.verdict.min_eig_diff > 0.0);
    }
}

TEST_CASE("identical maps compare equal at every point") {
    const CanonicalPair pair;
    const MonotonicityReport rep =
        verify_main_theorem(pair.alpha, pair.alpha, {1e3, 5e4}, 1e-12);
    for (const auto& e : rep.entries) CHECK(e.verdict.relation == LoewnerRelation::equal);
}

TEST_CASE("evaluation between the two poles is a domain error") {
    const CanonicalPair pair;
    const AssembledSystem sys_a = assemble_system(pair.alpha);
    const AssembledSystem sys_b = assemble_system(pair.beta);
    const double pole_a =
        validity_domain(solve_modes(sys_a.matrices.L, sys_a.matrices.R)).lambda1;
    const double pole_b =
        validity_domain(solve_modes(sys_b.matrices.L, sys_b.matrices.R)).lambda1;
    REQUIRE(pole_b < pole_a);  // larger resistivity decays faster

    const double between = 0.5 * (pole_a + pole_b);
    CHECK_THROWS_AS(verify_main_theorem(pair.alpha, pair.beta, {between}), DomainError);
}

TEST_CASE("entrywise order is required") {
    const CanonicalPair pair;
    CHECK_THROWS_AS(verify_main_theorem(pair.beta, pair.alpha, {1e4}), ArgumentError);
}

TEST_CASE("ordering direction is stable across random pairs and points") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        mit::test::ScenarioParams params;
        params.max_n = 6;
        const auto [alpha, beta] = mit::test::random_ordered_pair(300 + seed, params);
        const AssembledSystem sys = assemble_system(alpha);
        const Eigen::MatrixXd R_beta = assemble_resistance(sys.network, sys.basis, beta.eta);
        const double pole = std::max(
            validity_domain(solve_modes(sys.matrices.L, sys.matrices.R)).lambda1,
            validity_domain(solve_modes(sys.matrices.L, R_beta)).lambda1);
        const std::vector<double> lambdas{0.9 * pole, 0.4 * pole, 0.5 * std::abs(pole),
                                          2.0 * std::abs(pole), 20.0 * std::abs(pole)};
        const MonotonicityReport rep = verify_main_theorem(alpha, beta, lambdas);
        CHECK(rep.consistent);
        for (const auto& e : rep.entries)
            CHECK((e.verdict.relation == LoewnerRelation::leq ||
                   e.verdict.relation == LoewnerRelation::equal));
    }
}

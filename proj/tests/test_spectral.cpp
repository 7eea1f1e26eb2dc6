#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "core/assembly.hpp"
#include "core/errors.hpp"
#include "core/noise.hpp"
#include "core/spectral.hpp"
#include "support/oracles.hpp"
#include "support/random_scenario.hpp"

using namespace mit;

namespace {

Eigen::MatrixXd random_spd(int n, NormalRng& rng, double shift = 0.5) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    return G * G.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("scalar pencil gives tau = L/R") {
    Eigen::MatrixXd L(1, 1), R(1, 1);
    L << 1e-8;
    R << 4e-3;
    const ModalBasis modal = solve_modes(L, R);
    CHECK(modal.tau(0) == doctest::Approx(2.5e-6).epsilon(1e-12));
    CHECK(modal.modal_resistance(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(modal.modal_inductance(0) == doctest::Approx(2.5e-6).epsilon(1e-12));
    CHECK(validity_domain(modal).lambda1 == doctest::Approx(-4e5).epsilon(1e-12));
}

TEST_CASE("identity pencil has unit time constants") {
    NormalRng rng(2);
    const Eigen::MatrixXd A = random_spd(5, rng);
    const ModalBasis modal = solve_modes(A, A);
    for (int k = 0; k < 5; ++k) CHECK(modal.tau(k) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random pencil matches the dense nonsymmetric oracle") {
    NormalRng rng(4);
    const Eigen::MatrixXd L = random_spd(6, rng);
    const Eigen::MatrixXd R = random_spd(6, rng);
    const ModalBasis modal = solve_modes(L, R);
    const Eigen::VectorXd oracle = mit::test::oracle_pencil_eigenvalues(L, R);
    for (int k = 0; k < 6; ++k)
        CHECK(modal.tau(k) == doctest::Approx(oracle(k)).epsilon(1e-10));
    // R-orthonormality.
    const Eigen::MatrixXd gram = modal.modes.transpose() * R * modal.modes;
    CHECK((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("assembled scenario satisfies the modal invariants") {
    const Scenario s = mit::test::random_scenario(9);
    const AssembledSystem sys = assemble_system(s);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);

    const double norm_l = sys.matrices.L.cwiseAbs().maxCoeff();
    for (int k = 0; k < modal.count(); ++k) {
        CHECK(modal.tau(k) > 0.0);
        if (k > 0) CHECK(modal.tau(k) <= modal.tau(k - 1));
        const double residual = (sys.matrices.L * modal.modes.col(k) -
                                 modal.tau(k) * sys.matrices.R * modal.modes.col(k))
                                    .norm();
        CHECK(residual <= 1e-10 * norm_l);
        CHECK(modal.modal_resistance(k) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(modal.modal_inductance(k) == doctest::Approx(modal.tau(k)).epsilon(1e-9));
    }
}

TEST_CASE("Rayleigh quotient is maximized by the leading mode") {
    NormalRng rng(6);
    const Eigen::MatrixXd L = random_spd(8, rng);
    const Eigen::MatrixXd R = random_spd(8, rng);
    const ModalBasis modal = solve_modes(L, R);
    const double tau1 = modal.tau(0);

    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::VectorXd x(8);
        for (int i = 0; i < 8; ++i) x(i) = rng.normal();
        const double quotient = x.dot(L * x) / x.dot(R * x);
        CHECK(quotient <= tau1 * (1.0 + 1e-8));
    }
    const Eigen::VectorXd j1 = modal.modes.col(0);
    CHECK(j1.dot(L * j1) / j1.dot(R * j1) == doctest::Approx(tau1).epsilon(1e-8));
}

TEST_CASE("uniform map scaling moves the pole linearly") {
    const GridSpec grid = build_grid(4, 4, 0.01, 0.001);
    const auto [net, basis] = assemble_loop_basis(grid);
    const Eigen::MatrixXd L = assemble_inductance(net, basis, 0.0025);
    const double k = 3.0;

    const ResistivityMap eta1 = make_inclusion_map(grid, 1e-6, CellSet{}, 1e-5);
    ResistivityMap eta2 = eta1;
    for (double& v : eta2.values) v *= k;

    const ModalBasis m1 = solve_modes(L, assemble_resistance(net, basis, eta1));
    const ModalBasis m2 = solve_modes(L, assemble_resistance(net, basis, eta2));
    CHECK(m2.tau(0) == doctest::Approx(m1.tau(0) / k).epsilon(1e-10));
    CHECK(validity_domain(m2).lambda1 ==
          doctest::Approx(k * validity_domain(m1).lambda1).epsilon(1e-10));
}

TEST_CASE("single-loop plate reduces to the scalar time constant") {
    const GridSpec grid = build_grid(2, 2, 0.01, 0.001);
    const auto [net, basis] = assemble_loop_basis(grid);
    const Eigen::MatrixXd L = assemble_inductance(net, basis, 0.0025);
    const Eigen::MatrixXd R =
        assemble_resistance(net, basis, make_inclusion_map(grid, 1e-6, CellSet{}, 1e-5));
    const ModalBasis modal = solve_modes(L, R);
    CHECK(modal.tau(0) == doctest::Approx(L(0, 0) / R(0, 0)).epsilon(1e-12));
}

TEST_CASE("coercivity boundary sits exactly at the dominant pole") {
    const Scenario s = mit::test::random_scenario(13);
    const AssembledSystem sys = assemble_system(s);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);
    const double tau1 = modal.tau(0);
    const double norm_r = sys.matrices.R.cwiseAbs().maxCoeff();

    CHECK(check_coercive(sys.matrices.L, sys.matrices.R, 0.0) > 0.0);
    CHECK(std::abs(check_coercive(sys.matrices.L, sys.matrices.R, -1.0 / tau1)) <=
          1e-10 * norm_r);
    CHECK(check_coercive(sys.matrices.L, sys.matrices.R, -2.0 / tau1) < 0.0);

    // The sign change has a single root, located by bisection at -1/tau1.
    double lo = -1.5 / tau1;
    double hi = -0.5 / tau1;
    REQUIRE(check_coercive(sys.matrices.L, sys.matrices.R, lo) < 0.0);
    REQUIRE(check_coercive(sys.matrices.L, sys.matrices.R, hi) > 0.0);
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (check_coercive(sys.matrices.L, sys.matrices.R, mid) > 0.0 ? hi : lo) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(-1.0 / tau1).epsilon(1e-6));
}

TEST_CASE("indefinite resistance is rejected") {
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(3, 3);
    R(2, 2) = -1.0;
    CHECK_THROWS_AS(solve_modes(L, R), NumericError);

    // Indefinite L shows up as a nonpositive time constant.
    Eigen::MatrixXd L2 = Eigen::MatrixXd::Identity(3, 3);
    L2(0, 0) = -2.0;
    CHECK_THROWS_AS(solve_modes(L2, R.cwiseAbs()), NumericError);
}

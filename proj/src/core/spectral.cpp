#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <string>

#include "core/errors.hpp"

namespace mit {

ModalBasis solve_modes(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R) {
    if (L.rows() != L.cols() || R.rows() != R.cols() || L.rows() != R.rows())
        throw ArgumentError("solve_modes: L and R must be square and conformable");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(L, R);
    if (solver.info() != Eigen::Success)
        throw NumericError("solve_modes: symmetric-definite reduction failed (R not SPD)");

    const int n = static_cast<int>(L.rows());
    ModalBasis modal;
    modal.tau.resize(n);
    modal.modes.resize(n, n);
    // Eigen returns eigenvalues ascending with B-orthonormal vectors; store
    // time constants in non-increasing order.
    for (int k = 0; k < n; ++k) {
        modal.tau(k) = solver.eigenvalues()(n - 1 - k);
        modal.modes.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    if (!(modal.tau(n - 1) > 0.0))
        throw NumericError("solve_modes: nonpositive time constant (L not SPD)");

    const double scale = L.selfadjointView<Eigen::Lower>().operatorNorm();
    for (int k = 0; k < n; ++k) {
        const double residual =
            (L * modal.modes.col(k) - modal.tau(k) * (R * modal.modes.col(k))).norm();
        if (residual > 1e-10 * scale)
            throw NumericError("solve_modes: eigenpair residual " + std::to_string(residual) +
                               " exceeds 1e-10 * ||L||");
    }

    modal.modal_resistance.resize(n);
    modal.modal_inductance.resize(n);
    for (int k = 0; k < n; ++k) {
        modal.modal_resistance(k) = modal.modes.col(k).dot(R * modal.modes.col(k));
        modal.modal_inductance(k) = modal.modes.col(k).dot(L * modal.modes.col(k));
    }
    return modal;
}

ValidityDomain validity_domain(const ModalBasis& modal) {
    if (modal.count() == 0) throw ArgumentError("validity_domain: empty modal basis");
    return ValidityDomain{-1.0 / modal.tau(0)};
}

double check_coercive(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R, double lambda) {
    if (L.rows() != R.rows() || L.cols() != R.cols() || L.rows() != L.cols())
        throw ArgumentError("check_coercive: L and R must be square and conformable");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R + lambda * L,
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace mit

#pragma once

#include <Eigen/Core>

namespace mit {

// Generalized eigenpairs L j_n = tau_n R j_n with columns R-orthonormal
// (j_m^T R j_n = delta_mn). Under this normalization the modal resistances
// are 1 and the modal inductances equal the time constants.
struct ModalBasis {
    Eigen::VectorXd tau;              // time constants, s, sorted non-increasing
    Eigen::MatrixXd modes;            // n_c x n_c, column n = j_n
    Eigen::VectorXd modal_resistance; // j_n^T R j_n
    Eigen::VectorXd modal_inductance; // j_n^T L j_n

    int count() const { return static_cast<int>(tau.size()); }
};

// Real semi-axis lambda > lambda1 on which R + lambda*L stays positive
// definite; lambda1 = -1/tau_1 is the dominant pole of the transfer matrix.
struct ValidityDomain {
    double lambda1 = 0.0;
};

ModalBasis solve_modes(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R);

ValidityDomain validity_domain(const ModalBasis& modal);

// Smallest eigenvalue of R + lambda*L; positive exactly when lambda lies in
// the validity domain.
double check_coercive(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R, double lambda);

}  // namespace mit

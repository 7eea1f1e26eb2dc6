#pragma once

#include <Eigen/Core>

#include "core/assembly.hpp"
#include "core/constants.hpp"
#include "core/spectral.hpp"

namespace mit {

// Coil-space transfer matrix at a real evaluation point. Maps a source coil
// current pattern (A) to the measured coil voltage amplitudes (V) under the
// recorded measurement polarity. Symmetric n_s x n_s.
struct TransferMatrix {
    double lambda = 0.0;
    Eigen::MatrixXd H;
    int sign_convention = kSignConvention;
};

// sign * lambda^2 * M^T (R + lambda L)^{-1} M by factorization, explicitly
// symmetrized. Requires lambda > domain.lambda1.
TransferMatrix transfer_direct(const OperatorMatrices& matrices, const ValidityDomain& domain,
                               double lambda, int sign_convention = kSignConvention);

// Modal resolvent form: sign * lambda^2 * sum_n (M^T j_n)(M^T j_n)^T / (1 + lambda tau_n).
TransferMatrix transfer_modal(const ModalBasis& modal, const Eigen::MatrixXd& M,
                              double lambda, int sign_convention = kSignConvention);

// Spectral norm of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& sym);

}  // namespace mit

#include "core/transfer.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace mit {

namespace {

void require_in_domain(double lambda, double lambda1) {
    if (!std::isfinite(lambda))
        throw ArgumentError("transfer: lambda must be finite");
    if (!(lambda > lambda1))
        throw DomainError("transfer: lambda = " + std::to_string(lambda) +
                          " outside the validity domain (pole at " +
                          std::to_string(lambda1) + ")");
}

void require_sign(int sign_convention) {
    if (sign_convention != 1 && sign_convention != -1)
        throw ArgumentError("sign convention must be +1 or -1");
}

}  // namespace

double spectral_norm(const Eigen::MatrixXd& sym) {
    if (sym.size() == 0) return 0.0;
    return sym.selfadjointView<Eigen::Lower>().operatorNorm();
}

TransferMatrix transfer_direct(const OperatorMatrices& matrices, const ValidityDomain& domain,
                               double lambda, int sign_convention) {
    require_sign(sign_convention);
    require_in_domain(lambda, domain.lambda1);
    const Eigen::Index ns = matrices.M.cols();

    TransferMatrix out;
    out.lambda = lambda;
    out.sign_convention = sign_convention;
    if (lambda == 0.0) {
        out.H = Eigen::MatrixXd::Zero(ns, ns);
        return out;
    }

    const Eigen::MatrixXd K = matrices.R + lambda * matrices.L;
    Eigen::LDLT<Eigen::MatrixXd> factor(K);
    if (factor.info() != Eigen::Success || !factor.isPositive())
        throw NumericError("transfer_direct: factorization of (R + lambda L) failed");
    const Eigen::MatrixXd X = factor.solve(matrices.M);
    Eigen::MatrixXd H = sign_convention * lambda * lambda * (matrices.M.transpose() * X);

    const double scale = H.cwiseAbs().maxCoeff();
    const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-10 * scale)
        throw NumericError("transfer_direct: asymmetry " + std::to_string(asym / scale) +
                           " beyond 1e-10 relative before symmetrization");
    out.H = 0.5 * (H + H.transpose()).eval();
    return out;
}

TransferMatrix transfer_modal(const ModalBasis& modal, const Eigen::MatrixXd& M,
                              double lambda, int sign_convention) {
    require_sign(sign_convention);
    require_in_domain(lambda, -1.0 / modal.tau(0));

    TransferMatrix out;
    out.lambda = lambda;
    out.sign_convention = sign_convention;
    const Eigen::MatrixXd G = modal.modes.transpose() * M;  // n_c x n_s
    Eigen::VectorXd gains = (1.0 + lambda * modal.tau.array()).inverse().matrix();
    Eigen::MatrixXd H =
        sign_convention * lambda * lambda * (G.transpose() * gains.asDiagonal() * G);
    out.H = 0.5 * (H + H.transpose()).eval();
    return out;
}

}  // namespace mit

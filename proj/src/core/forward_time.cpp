#include "core/forward_time.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace mit {

namespace {

// Modal coordinates m_n(t) and their time derivatives on the grid.
Eigen::MatrixXd modal_coordinates(const ModalBasis& modal, const Eigen::VectorXd& c,
                                  const Eigen::VectorXd& a, double lambda,
                                  const Eigen::VectorXd& t_grid, bool derivative) {
    const int n = modal.count();
    const int nt = static_cast<int>(t_grid.size());
    Eigen::MatrixXd m(n, nt);
    for (int k = 0; k < nt; ++k) {
        const double t = t_grid(k);
        for (int i = 0; i < n; ++i) {
            const double decay = std::exp(-t / modal.tau(i));
            double value = derivative ? -c(i) / modal.tau(i) * decay : c(i) * decay;
            if (a.size() > 0) {
                const double grow = std::exp(lambda * t);
                value += derivative ? lambda * a(i) * grow : a(i) * grow;
            }
            m(i, k) = value;
        }
    }
    return m;
}

ModalTrajectory make_trajectory(const OperatorMatrices& matrices, const ModalBasis& modal,
                                const Eigen::VectorXd& c, const Eigen::VectorXd& a,
                                double lambda, const Eigen::VectorXd& t_grid,
                                int sign_convention) {
    ModalTrajectory traj;
    traj.t_grid = t_grid;
    traj.transient = c;
    traj.forced = a;
    traj.source_rate = lambda;
    traj.sign_convention = sign_convention;
    traj.loop_currents =
        modal.modes * modal_coordinates(modal, c, a, lambda, t_grid, false);
    traj.coil_voltages = measure_reaction(matrices, modal, traj);
    double envelope = 0.0;
    for (int i = 0; i < modal.count(); ++i)
        envelope += std::abs(c(i)) * modal.modes.col(i).norm();
    traj.decay_envelope = envelope;
    return traj;
}

}  // namespace

ModalTrajectory simulate_exponential(const OperatorMatrices& matrices, const ModalBasis& modal,
                                     const ExponentialSource& source,
                                     const Eigen::VectorXd& initial_loop_currents,
                                     const Eigen::VectorXd& t_grid, int sign_convention) {
    const int n = modal.count();
    if (initial_loop_currents.size() != n)
        throw ArgumentError("simulate_exponential: initial condition length mismatch");
    if (source.pattern.size() != matrices.M.cols())
        throw ArgumentError("simulate_exponential: source pattern length mismatch");
    if (!std::isfinite(source.lambda))
        throw ArgumentError("simulate_exponential: source rate must be finite");
    if (source.pattern.size() > 0 && source.pattern.cwiseAbs().maxCoeff() == 0.0)
        throw ArgumentError("simulate_exponential: source pattern must not be all zero");
    const double lambda1 = -1.0 / modal.tau(0);
    if (!(source.lambda > lambda1))
        throw DomainError("simulate_exponential: source rate " + std::to_string(source.lambda) +
                          " at or below the pole " + std::to_string(lambda1) +
                          "; no forced response exists");

    // Forced modal amplitudes a_n = -lambda (j_n^T M p) / (1 + lambda tau_n);
    // transient coefficients match the prescribed initial loop currents.
    const Eigen::VectorXd b = modal.modes.transpose() * (matrices.M * source.pattern);
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i)
        a(i) = -source.lambda * b(i) / (1.0 + source.lambda * modal.tau(i));
    const Eigen::VectorXd forced0 = modal.modes * a;
    const Eigen::VectorXd c =
        modal.modes.transpose() * (matrices.R * (initial_loop_currents - forced0));
    return make_trajectory(matrices, modal, c, a, source.lambda, t_grid, sign_convention);
}

ModalTrajectory simulate_free(const OperatorMatrices& matrices, const ModalBasis& modal,
                              const Eigen::VectorXd& initial_loop_currents,
                              const Eigen::VectorXd& t_grid, int sign_convention) {
    if (initial_loop_currents.size() != modal.count())
        throw ArgumentError("simulate_free: initial condition length mismatch");
    const Eigen::VectorXd c = modal.modes.transpose() * (matrices.R * initial_loop_currents);
    return make_trajectory(matrices, modal, c, Eigen::VectorXd(), 0.0, t_grid,
                           sign_convention);
}

Eigen::MatrixXd measure_reaction(const OperatorMatrices& matrices, const ModalBasis& modal,
                                 const ModalTrajectory& trajectory) {
    const Eigen::MatrixXd dmdt =
        modal_coordinates(modal, trajectory.transient, trajectory.forced,
                          trajectory.source_rate, trajectory.t_grid, true);
    const Eigen::MatrixXd G = matrices.M.transpose() * modal.modes;  // n_s x n_c
    return -trajectory.sign_convention * (G * dmdt);
}

}  // namespace mit

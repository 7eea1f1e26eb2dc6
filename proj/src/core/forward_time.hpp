#pragma once

#include <Eigen/Core>

#include "core/assembly.hpp"
#include "core/constants.hpp"
#include "core/spectral.hpp"

namespace mit {

// Source coil currents pattern * e^(lambda t).
struct ExponentialSource {
    double lambda = 0.0;
    Eigen::VectorXd pattern;  // length n_s, amperes
};

// Closed-form modal trajectory: loop currents
//   I(t) = sum_n (c_n e^{-t/tau_n} + a_n e^{lambda t}) j_n
// evaluated exactly on t_grid (no time stepping), together with the measured
// coil voltages under the recorded polarity.
struct ModalTrajectory {
    Eigen::VectorXd t_grid;
    Eigen::VectorXd transient;       // c_n
    Eigen::VectorXd forced;          // a_n; zero length for source-free runs
    double source_rate = 0.0;        // lambda of the forcing term
    int sign_convention = kSignConvention;
    Eigen::MatrixXd loop_currents;   // n_c x n_t
    Eigen::MatrixXd coil_voltages;   // n_s x n_t
    double decay_envelope = 0.0;     // sum_n |c_n| ||j_n||, bounds the free part
};

ModalTrajectory simulate_exponential(const OperatorMatrices& matrices, const ModalBasis& modal,
                                     const ExponentialSource& source,
                                     const Eigen::VectorXd& initial_loop_currents,
                                     const Eigen::VectorXd& t_grid,
                                     int sign_convention = kSignConvention);

ModalTrajectory simulate_free(const OperatorMatrices& matrices, const ModalBasis& modal,
                              const Eigen::VectorXd& initial_loop_currents,
                              const Eigen::VectorXd& t_grid,
                              int sign_convention = kSignConvention);

// Coil voltages sign * (-M^T dI/dt) with the derivative taken analytically on
// the modal representation carried by the trajectory.
Eigen::MatrixXd measure_reaction(const OperatorMatrices& matrices, const ModalBasis& modal,
                                 const ModalTrajectory& trajectory);

}  // namespace mit

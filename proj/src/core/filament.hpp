#pragma once

#include <Eigen/Core>
#include <vector>

namespace mit {

// Partial self-inductance of a straight filament segment of length `len`
// modeled as a thin wire of radius `radius`:  (mu0*len/2pi)*(ln(2*len/r) - 1).
// Valid for 0 < radius < len/2.
double self_partial_inductance(double len, double radius);

// Closed-form partial mutual inductance of two parallel straight filaments.
// `axis` is the common unit direction of segment A; B may point either way.
double mutual_parallel_segments(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                const Eigen::Vector3d& b0, const Eigen::Vector3d& b1);

// Neumann double line integral over two straight segments by tensor
// Gauss-Legendre quadrature of fixed order (deterministic).
double neumann_segments_gauss(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                              const Eigen::Vector3d& b0, const Eigen::Vector3d& b1,
                              int order = 8);

// Mutual inductance of two closed filament polylines (first vertex == last),
// via segment-pairwise Gauss quadrature of the Neumann kernel.
double mutual_inductance_polylines(const std::vector<Eigen::Vector3d>& a,
                                   const std::vector<Eigen::Vector3d>& b,
                                   int order = 8);

}  // namespace mit

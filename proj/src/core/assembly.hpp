#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "core/geometry.hpp"

namespace mit {

// One branch per grid edge. The conducting filament is the length-h segment
// joining the centers of the edge's two adjacent cells (it crosses the edge
// at its midpoint). Rim branches have a single adjacent cell, extend h/2 past
// the plate, and carry no current in any loop pattern, which realizes the
// zero-normal-current boundary condition exactly.
struct Branch {
    Eigen::Vector3d a, b;   // filament endpoints, z = 0 mid-plane
    double length = 0.0;    // m
    double cross_section = 0.0;  // thickness * cell_size (m^2)
    int cell0 = -1;         // adjacent cell on the negative side (-1 outside)
    int cell1 = -1;         // adjacent cell on the positive side (-1 outside)
    int axis = 0;           // filament direction: 0 = +x, 1 = +y
};

struct BranchNetwork {
    GridSpec grid;
    std::vector<Branch> branches;
    int count() const { return static_cast<int>(branches.size()); }
};

// Branch-by-loop incidence matrix with entries in {-1, 0, +1}; one column per
// interior mesh node, holding the 4 signed branches of the elementary loop
// circulating counterclockwise around that node.
struct LoopBasis {
    Eigen::MatrixXd W;
    int loop_count() const { return static_cast<int>(W.cols()); }
};

struct OperatorMatrices {
    Eigen::MatrixXd L;  // loop inductance, n_c x n_c, SPD
    Eigen::MatrixXd R;  // loop resistance, n_c x n_c, SPD
    Eigen::MatrixXd M;  // loop-to-coil coupling, n_c x n_s; its transpose is
                        // the coil-to-loop map (one matrix serves both roles)
};

// Default filament radius as a fraction of the branch length. h/5 keeps the
// projected inductance positive definite with a grid-size-stable eigenvalue
// margin; the thin-wire self term turns the matrix indefinite near h/4 once
// plates reach about 10x10.
inline constexpr double kDefaultWireRadiusFactor = 0.2;

struct AssemblyOptions {
    double wire_radius = 0.0;  // <= 0 selects cell_size * kDefaultWireRadiusFactor
    int threads = 1;
};

struct AssembledSystem {
    BranchNetwork network;
    LoopBasis basis;
    OperatorMatrices matrices;
};

std::pair<BranchNetwork, LoopBasis> assemble_loop_basis(const GridSpec& grid);

Eigen::MatrixXd assemble_resistance(const BranchNetwork& network, const LoopBasis& basis,
                                    const ResistivityMap& eta);

Eigen::MatrixXd assemble_inductance(const BranchNetwork& network, const LoopBasis& basis,
                                    double wire_radius, int threads = 1);

Eigen::MatrixXd assemble_coupling(const BranchNetwork& network, const LoopBasis& basis,
                                  const CoilSet& coils, int threads = 1);

AssembledSystem assemble_system(const Scenario& scenario, const AssemblyOptions& opts = {});

// Per-branch series resistance eta_b * len / cross_section with eta_b averaged
// over the adjacent cells. Exposed for the hand-assembled network checks.
Eigen::VectorXd branch_resistances(const BranchNetwork& network, const ResistivityMap& eta);

}  // namespace mit

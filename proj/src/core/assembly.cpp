#include "core/assembly.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "core/errors.hpp"
#include "core/filament.hpp"

namespace mit {

namespace {

// Branch indexing: duals of horizontal grid edges first (edge (a, j) between
// nodes (a, j) and (a+1, j); filament along +y), then duals of vertical grid
// edges (edge (i, b) between nodes (i, b) and (i, b+1); filament along +x).
int h_dual_index(const GridSpec& g, int a, int j) { return j * g.nx + a; }
int v_dual_index(const GridSpec& g, int i, int b) {
    return g.nx * (g.ny + 1) + b * (g.nx + 1) + i;
}

void run_chunked(int n, int threads, const std::function<void(int, int)>& body) {
    if (threads <= 1 || n < 2) {
        body(0, n);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
}

}  // namespace

std::pair<BranchNetwork, LoopBasis> assemble_loop_basis(const GridSpec& grid) {
    if (grid.nx < 2 || grid.ny < 2) throw ArgumentError("grid dimensions too small");
    const double h = grid.cell_size;
    const double x0 = grid.origin[0];
    const double y0 = grid.origin[1];

    BranchNetwork net;
    net.grid = grid;
    net.branches.resize(static_cast<std::size_t>(grid.nx * (grid.ny + 1) + grid.ny * (grid.nx + 1)));

    for (int j = 0; j <= grid.ny; ++j) {
        for (int a = 0; a < grid.nx; ++a) {
            Branch br;
            const Eigen::Vector3d mid(x0 + (a + 0.5) * h, y0 + j * h, 0.0);
            br.a = mid - Eigen::Vector3d(0.0, 0.5 * h, 0.0);
            br.b = mid + Eigen::Vector3d(0.0, 0.5 * h, 0.0);
            br.length = h;
            br.cross_section = grid.thickness * h;
            br.cell0 = j >= 1 ? grid.cell_index(a, j - 1) : -1;
            br.cell1 = j <= grid.ny - 1 ? grid.cell_index(a, j) : -1;
            br.axis = 1;
            net.branches[static_cast<std::size_t>(h_dual_index(grid, a, j))] = br;
        }
    }
    for (int b = 0; b < grid.ny; ++b) {
        for (int i = 0; i <= grid.nx; ++i) {
            Branch br;
            const Eigen::Vector3d mid(x0 + i * h, y0 + (b + 0.5) * h, 0.0);
            br.a = mid - Eigen::Vector3d(0.5 * h, 0.0, 0.0);
            br.b = mid + Eigen::Vector3d(0.5 * h, 0.0, 0.0);
            br.length = h;
            br.cross_section = grid.thickness * h;
            br.cell0 = i >= 1 ? grid.cell_index(i - 1, b) : -1;
            br.cell1 = i <= grid.nx - 1 ? grid.cell_index(i, b) : -1;
            br.axis = 0;
            net.branches[static_cast<std::size_t>(v_dual_index(grid, i, b))] = br;
        }
    }

    LoopBasis basis;
    basis.W = Eigen::MatrixXd::Zero(net.count(), grid.loop_count());
    for (int j = 1; j <= grid.ny - 1; ++j) {
        for (int i = 1; i <= grid.nx - 1; ++i) {
            const int col = (j - 1) * (grid.nx - 1) + (i - 1);
            // Counterclockwise square through the 4 cell centers around node (i, j).
            basis.W(v_dual_index(grid, i, j - 1), col) = +1.0;  // south side, +x
            basis.W(h_dual_index(grid, i, j), col) = +1.0;      // east side, +y
            basis.W(v_dual_index(grid, i, j), col) = -1.0;      // north side, -x
            basis.W(h_dual_index(grid, i - 1, j), col) = -1.0;  // west side, -y
        }
    }
    return {std::move(net), std::move(basis)};
}

Eigen::VectorXd branch_resistances(const BranchNetwork& network, const ResistivityMap& eta) {
    validate_resistivity(eta, network.grid);
    Eigen::VectorXd r(network.count());
    for (int k = 0; k < network.count(); ++k) {
        const Branch& br = network.branches[static_cast<std::size_t>(k)];
        double eta_b = 0.0;
        if (br.cell0 >= 0 && br.cell1 >= 0)
            eta_b = 0.5 * (eta.values[static_cast<std::size_t>(br.cell0)] +
                           eta.values[static_cast<std::size_t>(br.cell1)]);
        else
            eta_b = eta.values[static_cast<std::size_t>(br.cell0 >= 0 ? br.cell0 : br.cell1)];
        r(k) = eta_b * br.length / br.cross_section;
    }
    return r;
}

Eigen::MatrixXd assemble_resistance(const BranchNetwork& network, const LoopBasis& basis,
                                    const ResistivityMap& eta) {
    const Eigen::VectorXd r = branch_resistances(network, eta);
    Eigen::MatrixXd R = basis.W.transpose() * r.asDiagonal() * basis.W;
    R = 0.5 * (R + R.transpose()).eval();
    return R;
}

Eigen::MatrixXd assemble_inductance(const BranchNetwork& network, const LoopBasis& basis,
                                    double wire_radius, int threads) {
    const int n = network.count();
    for (const Branch& br : network.branches)
        if (!(wire_radius > 0.0) || !(wire_radius < 0.5 * br.length))
            throw ArgumentError("invalid wire radius: need 0 < radius < branch length/2");

    Eigen::MatrixXd Lb(n, n);
    run_chunked(n, threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const Branch& bi = network.branches[static_cast<std::size_t>(i)];
            Lb(i, i) = self_partial_inductance(bi.length, wire_radius);
            for (int j = 0; j < i; ++j) {
                const Branch& bj = network.branches[static_cast<std::size_t>(j)];
                // Axis-aligned lattice: pairs are either parallel or orthogonal.
                const double m = bi.axis == bj.axis
                                     ? mutual_parallel_segments(bi.a, bi.b, bj.a, bj.b)
                                     : 0.0;
                Lb(i, j) = m;
            }
        }
    });
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) Lb(i, j) = Lb(j, i);

    Eigen::MatrixXd L = basis.W.transpose() * Lb * basis.W;
    L = 0.5 * (L + L.transpose()).eval();
    return L;
}

Eigen::MatrixXd assemble_coupling(const BranchNetwork& network, const LoopBasis& basis,
                                  const CoilSet& coils, int threads) {
    validate_coils(coils, network.grid);
    const int n = network.count();
    const int ns = coils.count();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, ns);
    run_chunked(n, threads, [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k) {
            const Branch& br = network.branches[static_cast<std::size_t>(k)];
            for (int s = 0; s < ns; ++s) {
                const auto& v = coils.coils[static_cast<std::size_t>(s)].vertices;
                double m = 0.0;
                for (std::size_t q = 0; q + 1 < v.size(); ++q)
                    m += neumann_segments_gauss(br.a, br.b, v[q], v[q + 1]);
                B(k, s) = m;
            }
        }
    });
    return basis.W.transpose() * B;
}

AssembledSystem assemble_system(const Scenario& scenario, const AssemblyOptions& opts) {
    validate_scenario(scenario);
    auto [network, basis] = assemble_loop_basis(scenario.grid);
    const double radius =
        opts.wire_radius > 0.0 ? opts.wire_radius : kDefaultWireRadiusFactor * scenario.grid.cell_size;

    AssembledSystem sys{std::move(network), std::move(basis), {}};
    sys.matrices.L = assemble_inductance(sys.network, sys.basis, radius, opts.threads);
    sys.matrices.R = assemble_resistance(sys.network, sys.basis, scenario.eta);
    sys.matrices.M = assemble_coupling(sys.network, sys.basis, scenario.coils, opts.threads);
    return sys;
}

}  // namespace mit

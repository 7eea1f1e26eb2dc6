#include "core/imaging.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "core/errors.hpp"
#include "core/noise.hpp"
#include "core/spectral.hpp"

namespace mit {

namespace {

constexpr double kNoiselessTolRel = 1e-12;

void require_positive_contrast(const ImagingConfig& cfg) {
    if (!(cfg.eta_bg > 0.0) || !(cfg.eta_i > 0.0))
        throw ArgumentError("imaging: resistivities must be positive");
    if (!(cfg.eta_i > cfg.eta_bg))
        throw ArgumentError("imaging: inclusion resistivity must exceed the background");
}

}  // namespace

const IndicatorRow& IndicatorTable::at(int element, int lambda_index) const {
    return rows[static_cast<std::size_t>(element) * lambdas.size() +
                static_cast<std::size_t>(lambda_index)];
}

std::vector<TransferMatrix> measure_anomaly(const Scenario& scenario,
                                            const std::vector<double>& lambda_samples,
                                            double noise_delta_rel, std::uint64_t seed,
                                            const AssemblyOptions& opts,
                                            int sign_convention,
                                            std::vector<double>* injected_noise) {
    if (lambda_samples.empty())
        throw ArgumentError("measure_anomaly: at least one lambda sample required");
    if (noise_delta_rel < 0.0)
        throw ArgumentError("measure_anomaly: noise bound must be >= 0");

    const AssembledSystem sys = assemble_system(scenario, opts);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);
    const ValidityDomain domain = validity_domain(modal);

    NormalRng rng(seed);
    std::vector<TransferMatrix> out;
    out.reserve(lambda_samples.size());
    if (injected_noise) injected_noise->assign(lambda_samples.size(), 0.0);
    for (std::size_t k = 0; k < lambda_samples.size(); ++k) {
        TransferMatrix tm =
            transfer_direct(sys.matrices, domain, lambda_samples[k], sign_convention);
        if (noise_delta_rel > 0.0) {
            const double delta = noise_delta_rel * spectral_norm(tm.H);
            tm.H += symmetric_noise(static_cast<int>(tm.H.rows()), delta, rng);
            if (injected_noise) (*injected_noise)[k] = delta;
        }
        out.push_back(std::move(tm));
    }
    return out;
}

std::vector<IndicatorRow> indicator(const std::vector<TransferMatrix>& measured,
                                    const std::vector<TransferMatrix>& element,
                                    const std::vector<double>& tol, IndicatorSide side,
                                    int element_id) {
    if (measured.size() != element.size() || measured.size() != tol.size())
        throw ArgumentError("indicator: sample count mismatch");
    std::vector<IndicatorRow> rows;
    rows.reserve(measured.size());
    for (std::size_t k = 0; k < measured.size(); ++k) {
        if (measured[k].sign_convention != element[k].sign_convention)
            throw ArgumentError("indicator: mixed sign conventions");
        // Convention-ordered difference: positive semi-definite exactly when
        // the tested inclusion relation holds for the stored matrices.
        const double orient =
            (side == IndicatorSide::contained) ? -measured[k].sign_convention
                                               : measured[k].sign_convention;
        const Eigen::MatrixXd diff = orient * (measured[k].H - element[k].H);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff, Eigen::EigenvaluesOnly);

        IndicatorRow row;
        row.element = element_id;
        row.lambda = measured[k].lambda;
        row.margin = solver.eigenvalues().minCoeff();
        const double norm = spectral_norm(measured[k].H);
        row.margin_normalized = norm > 0.0 ? row.margin / norm : row.margin;
        row.tol = tol[k];
        row.pass = row.margin >= -tol[k];
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::vector<int> passing_elements(const IndicatorTable& table,
                                  std::optional<int> lambda_index) {
    std::vector<int> passing;
    for (int e = 0; e < table.element_count; ++e) {
        bool pass = true;
        if (lambda_index) {
            pass = table.at(e, *lambda_index).pass;
        } else {
            for (std::size_t k = 0; k < table.lambdas.size() && pass; ++k)
                pass = table.at(e, static_cast<int>(k)).pass;
        }
        if (pass) passing.push_back(e);
    }
    return passing;
}

}  // namespace

CellSet reconstruct_upper(const IndicatorTable& table, const std::vector<CellSet>& elements,
                          std::optional<int> lambda_index) {
    std::vector<CellSet> keep;
    for (int e : passing_elements(table, lambda_index))
        keep.push_back(elements[static_cast<std::size_t>(e)]);
    return cells_union(keep);
}

CellSet reconstruct_lower(const IndicatorTable& table, const std::vector<CellSet>& candidates,
                          const GridSpec& grid, std::optional<int> lambda_index) {
    std::vector<CellSet> keep;
    for (int e : passing_elements(table, lambda_index))
        keep.push_back(candidates[static_cast<std::size_t>(e)]);
    return cells_intersection(keep, grid);
}

std::vector<double> default_lambda_samples(double background_pole) {
    const double base = 1.1 * std::abs(background_pole);
    std::vector<double> lambdas(8);
    for (int k = 0; k < 8; ++k) lambdas[static_cast<std::size_t>(k)] = base * std::pow(10.0, k / 7.0);
    return lambdas;
}

ReconstructionResult reconstruct(const GridSpec& grid, const CoilSet& coils,
                                 const CellSet& anomaly, const ImagingConfig& config) {
    require_positive_contrast(config);
    validate_coils(coils, grid);

    // Shared geometry; only the resistance changes between resistivity maps.
    auto [network, basis] = assemble_loop_basis(grid);
    const double radius = config.assembly.wire_radius > 0.0
                              ? config.assembly.wire_radius
                              : kDefaultWireRadiusFactor * grid.cell_size;
    const Eigen::MatrixXd L =
        assemble_inductance(network, basis, radius, config.assembly.threads);
    const Eigen::MatrixXd M =
        assemble_coupling(network, basis, coils, config.assembly.threads);

    const auto pole_of = [&](const CellSet& cells) {
        const ResistivityMap eta = make_inclusion_map(grid, config.eta_bg, cells, config.eta_i);
        const Eigen::MatrixXd R = assemble_resistance(network, basis, eta);
        return validity_domain(solve_modes(L, R)).lambda1;
    };

    ReconstructionResult result;
    result.config = config;
    result.pole_background = pole_of(CellSet{});
    std::vector<int> all_cells(static_cast<std::size_t>(grid.cell_count()));
    for (int i = 0; i < grid.cell_count(); ++i) all_cells[static_cast<std::size_t>(i)] = i;
    result.pole_full_inclusion = pole_of(CellSet{all_cells});

    for (const CellSet& t : config.test_elements) result.element_poles.push_back(pole_of(t));
    for (const CellSet& c : config.candidates) result.candidate_poles.push_back(pole_of(c));

    // Conservative threshold: every map of the inclusion form has its pole at
    // or below the background pole; take the max over everything computed.
    result.threshold_pole = std::max(result.pole_background, result.pole_full_inclusion);
    for (double p : result.element_poles) result.threshold_pole = std::max(result.threshold_pole, p);
    for (double p : result.candidate_poles) result.threshold_pole = std::max(result.threshold_pole, p);

    result.lambdas = config.lambda_samples.empty()
                         ? default_lambda_samples(result.pole_background)
                         : config.lambda_samples;
    for (double lambda : result.lambdas)
        if (!(lambda > result.threshold_pole))
            throw DomainError("reconstruct: lambda sample " + std::to_string(lambda) +
                              " at or below the pole threshold " +
                              std::to_string(result.threshold_pole));

    const Scenario anomaly_scenario{
        grid, make_inclusion_map(grid, config.eta_bg, anomaly, config.eta_i), coils};
    std::vector<double> injected_noise;
    const std::vector<TransferMatrix> measured =
        measure_anomaly(anomaly_scenario, result.lambdas, config.noise_delta, config.seed,
                        config.assembly, config.sign_convention, &injected_noise);

    // Default tolerance: the injected data-error bound plus a numeric floor,
    // so a test element truly below the data never drops out.
    result.tol.resize(result.lambdas.size());
    for (std::size_t k = 0; k < result.lambdas.size(); ++k) {
        if (config.tol_abs) {
            result.tol[k] = *config.tol_abs;
        } else {
            const double norm = spectral_norm(measured[k].H);
            result.tol[k] = injected_noise[k] + kNoiselessTolRel * norm;
        }
    }

    const auto element_rows = [&](const std::vector<CellSet>& sets, IndicatorSide side,
                                  IndicatorTable& table) {
        table.element_count = static_cast<int>(sets.size());
        table.lambdas = result.lambdas;
        table.rows.resize(sets.size() * result.lambdas.size());
        const int n = static_cast<int>(sets.size());
        const int workers = std::max(1, std::min(config.assembly.threads, n));
        std::vector<std::thread> pool;
        const int chunk = n == 0 ? 1 : (n + workers - 1) / workers;
        const auto body = [&](int lo, int hi) {
            for (int e = lo; e < hi; ++e) {
                const ResistivityMap eta =
                    make_inclusion_map(grid, config.eta_bg, sets[static_cast<std::size_t>(e)],
                                       config.eta_i);
                const Eigen::MatrixXd R = assemble_resistance(network, basis, eta);
                const OperatorMatrices mats{L, R, M};
                const ValidityDomain dom = validity_domain(solve_modes(L, R));
                std::vector<TransferMatrix> h_elem;
                h_elem.reserve(result.lambdas.size());
                for (double lambda : result.lambdas)
                    h_elem.push_back(
                        transfer_direct(mats, dom, lambda, config.sign_convention));
                const std::vector<IndicatorRow> rows =
                    indicator(measured, h_elem, result.tol, side, e);
                std::copy(rows.begin(), rows.end(),
                          table.rows.begin() +
                              static_cast<std::ptrdiff_t>(e) *
                                  static_cast<std::ptrdiff_t>(result.lambdas.size()));
            }
        };
        if (workers <= 1 || n < 2) {
            body(0, n);
        } else {
            for (int w = 0; w < workers; ++w) {
                const int lo = w * chunk;
                const int hi = std::min(n, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(body, lo, hi);
            }
            for (auto& t : pool) t.join();
        }
    };

    element_rows(config.test_elements, IndicatorSide::contained, result.test_table);
    element_rows(config.candidates, IndicatorSide::containing, result.candidate_table);

    result.upper = reconstruct_upper(result.test_table, config.test_elements);
    result.lower = reconstruct_lower(result.candidate_table, config.candidates, grid);
    return result;
}

}  // namespace mit

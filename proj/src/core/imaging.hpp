#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/assembly.hpp"
#include "core/geometry.hpp"
#include "core/monotonicity.hpp"
#include "core/transfer.hpp"

namespace mit {

struct ImagingConfig {
    double eta_bg = 0.0;
    double eta_i = 0.0;                  // inclusion resistivity, > eta_bg
    std::vector<double> lambda_samples;  // empty selects the default grid
    std::optional<double> tol_abs;       // absolute PSD tolerance override
    double noise_delta = 0.0;            // relative spectral-norm noise bound
    std::uint64_t seed = 0;
    std::vector<CellSet> test_elements;  // cover, union rule
    std::vector<CellSet> candidates;     // candidate supersets, intersection rule
    int sign_convention = kSignConvention;
    AssemblyOptions assembly;
};

// Transfer matrices of the anomaly scenario at each sample, with optional
// seeded symmetric noise of spectral norm noise_delta_rel * ||H(lambda)||.
// When `injected_noise` is given it receives the absolute spectral norm of
// the perturbation applied at each sample.
std::vector<TransferMatrix> measure_anomaly(const Scenario& scenario,
                                            const std::vector<double>& lambda_samples,
                                            double noise_delta_rel, std::uint64_t seed,
                                            const AssemblyOptions& opts = {},
                                            int sign_convention = kSignConvention,
                                            std::vector<double>* injected_noise = nullptr);

// Which side of the measured data an element is tested against: `contained`
// passes when H_T is below H_A (union rule), `containing` when H_T dominates
// H_A (intersection rule). Differences are oriented by the sign convention.
enum class IndicatorSide { contained, containing };

struct IndicatorRow {
    int element = 0;
    double lambda = 0.0;
    double margin = 0.0;             // min eig of the convention-ordered difference
    double margin_normalized = 0.0;  // margin / ||H_A(lambda)||
    double tol = 0.0;
    bool pass = false;
};

struct IndicatorTable {
    int element_count = 0;
    std::vector<double> lambdas;
    std::vector<IndicatorRow> rows;  // element-major, lambda-minor
    const IndicatorRow& at(int element, int lambda_index) const;
};

// Margins of one test element's transfer matrices against the measured set.
std::vector<IndicatorRow> indicator(const std::vector<TransferMatrix>& measured,
                                    const std::vector<TransferMatrix>& element,
                                    const std::vector<double>& tol, IndicatorSide side,
                                    int element_id);

// Union of elements passing at every sample, or at the single prescribed one.
CellSet reconstruct_upper(const IndicatorTable& table, const std::vector<CellSet>& elements,
                          std::optional<int> lambda_index = std::nullopt);

// Intersection of candidates dominating at every sample (or at the prescribed
// one); the intersection over an empty passing family is the whole domain.
CellSet reconstruct_lower(const IndicatorTable& table, const std::vector<CellSet>& candidates,
                          const GridSpec& grid,
                          std::optional<int> lambda_index = std::nullopt);

struct ReconstructionResult {
    std::vector<double> lambdas;
    std::vector<double> tol;             // per lambda
    double threshold_pole = 0.0;         // conservative bound on every relevant pole
    double pole_background = 0.0;
    double pole_full_inclusion = 0.0;
    std::vector<double> element_poles;
    std::vector<double> candidate_poles;
    IndicatorTable test_table;
    IndicatorTable candidate_table;
    CellSet upper;  // all-sample union rule
    CellSet lower;  // all-sample intersection rule
    ImagingConfig config;
};

// Full non-iterative reconstruction pipeline. `anomaly` is the measured
// scenario's inclusion support (used only to synthesize the data).
ReconstructionResult reconstruct(const GridSpec& grid, const CoilSet& coils,
                                 const CellSet& anomaly, const ImagingConfig& config);

// Default evaluation grid: 8 log-spaced points over one decade starting at
// 1.1x the magnitude of the dominant (background) pole.
std::vector<double> default_lambda_samples(double background_pole);

}  // namespace mit

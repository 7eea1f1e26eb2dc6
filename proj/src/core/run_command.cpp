#include "core/run_command.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "core/assembly.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/forward_time.hpp"
#include "core/imaging.hpp"
#include "core/monotonicity.hpp"
#include "core/result_io.hpp"
#include "core/scenario_io.hpp"
#include "core/spectral.hpp"
#include "core/transfer.hpp"

namespace mit {

namespace {

struct PipelineContext {
    ScenarioConfig cfg;
    int sign = kSignConvention;
    AssemblyOptions assembly;
};

void add_provenance(JsonWriter& w, const PipelineContext& ctx, const std::string& command) {
    w.key("command").value(command);
    w.key("provenance").begin_object();
    w.key("tool_version").value(kToolVersion);
    w.key("config_hash").value(config_hash(ctx.cfg));
    w.key("seed").value(ctx.cfg.run.seed);
    w.key("sign_convention").value(ctx.sign);
    w.end_object();
}

std::string cells_json(const CellSet& cells) {
    std::string out = "[";
    for (std::size_t i = 0; i < cells.cells.size(); ++i)
        out += (i ? ", " : "") + std::to_string(cells.cells[i]);
    return out + "]";
}

std::vector<double> lambda_grid(const PipelineContext& ctx, double pole) {
    return ctx.cfg.run.lambda_samples.empty() ? default_lambda_samples(pole)
                                              : ctx.cfg.run.lambda_samples;
}

OutputBundle cmd_spectrum(const PipelineContext& ctx) {
    const AssembledSystem sys = assemble_system(to_scenario(ctx.cfg), ctx.assembly);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);

    TsvWriter tsv({"mode", "tau", "modal_resistance", "modal_inductance"});
    for (int k = 0; k < modal.count(); ++k)
        tsv.row({std::to_string(k + 1), format_double(modal.tau(k)),
                 format_double(modal.modal_resistance(k)),
                 format_double(modal.modal_inductance(k))});

    JsonWriter w;
    w.begin_object();
    add_provenance(w, ctx, "spectrum");
    w.key("loop_count").value(modal.count());
    w.key("coil_count").value(static_cast<int>(sys.matrices.M.cols()));
    w.key("pole").value(validity_domain(modal).lambda1);
    w.key("tau").begin_array();
    for (int k = 0; k < modal.count(); ++k) w.value(modal.tau(k));
    w.end_array();
    w.end_object();

    OutputBundle out;
    out.add("spectrum.tsv", tsv.str());
    out.add("summary.json", w.str());
    return out;
}

OutputBundle cmd_transfer(const PipelineContext& ctx) {
    const AssembledSystem sys = assemble_system(to_scenario(ctx.cfg), ctx.assembly);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);
    const ValidityDomain domain = validity_domain(modal);
    const std::vector<double> lambdas = lambda_grid(ctx, domain.lambda1);

    OutputBundle out;
    JsonWriter w;
    w.begin_object();
    add_provenance(w, ctx, "transfer");
    w.key("pole").value(domain.lambda1);
    w.key("lambdas").begin_array();
    for (double lambda : lambdas) w.value(lambda);
    w.end_array();
    w.key("files").begin_array();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const TransferMatrix tm = transfer_direct(sys.matrices, domain, lambdas[k], ctx.sign);
        char name[48];
        std::snprintf(name, sizeof name, "transfer_%03zu.tsv", k);
        out.add(name, matrix_tsv(tm.H));
        w.value(std::string(name));
    }
    w.end_array();
    w.end_object();
    out.add("summary.json", w.str());
    return out;
}

OutputBundle cmd_simulate(const PipelineContext& ctx) {
    const AssembledSystem sys = assemble_system(to_scenario(ctx.cfg), ctx.assembly);
    const ModalBasis modal = solve_modes(sys.matrices.L, sys.matrices.R);
    const double tau1 = modal.tau(0);
    const SimulateSpec& spec = ctx.cfg.run.simulate;

    ExponentialSource source;
    source.lambda = spec.lambda.value_or(1.0 / tau1);
    const int ns = static_cast<int>(sys.matrices.M.cols());
    if (spec.pattern.empty()) {
        source.pattern = Eigen::VectorXd::Zero(ns);
        source.pattern(0) = 1.0;
    } else {
        if (static_cast<int>(spec.pattern.size()) != ns)
            throw ArgumentError("simulate: pattern length must equal the coil count");
        source.pattern =
            Eigen::Map<const Eigen::VectorXd>(spec.pattern.data(),
                                              static_cast<Eigen::Index>(spec.pattern.size()));
    }
    const double t_max = spec.t_max.value_or(tau1 * std::log(1e8));
    const int samples = spec.samples.value_or(200);
    Eigen::VectorXd t_grid = Eigen::VectorXd::LinSpaced(samples, 0.0, t_max);

    const Eigen::VectorXd i0 = Eigen::VectorXd::Zero(modal.count());
    const ModalTrajectory traj =
        simulate_exponential(sys.matrices, modal, source, i0, t_grid, ctx.sign);

    std::vector<std::string> cols{"t"};
    for (int s = 0; s < ns; ++s) cols.push_back("v" + std::to_string(s));
    TsvWriter tsv(cols);
    for (int k = 0; k < t_grid.size(); ++k) {
        std::vector<std::string> row{format_double(t_grid(k))};
        for (int s = 0; s < ns; ++s) row.push_back(format_double(traj.coil_voltages(s, k)));
        tsv.row(row);
    }

    JsonWriter w;
    w.begin_object();
    add_provenance(w, ctx, "simulate");
    w.key("lambda").value(source.lambda);
    w.key("tau1").value(tau1);
    w.key("pattern").begin_array();
    for (int s = 0; s < ns; ++s) w.value(source.pattern(s));
    w.end_array();
    w.key("transient_coefficients").begin_array();
    for (int n = 0; n < traj.transient.size(); ++n) w.value(traj.transient(n));
    w.end_array();
    w.key("forced_amplitudes").begin_array();
    for (int n = 0; n < traj.forced.size(); ++n) w.value(traj.forced(n));
    w.end_array();
    w.key("decay_envelope").value(traj.decay_envelope);
    w.end_object();

    OutputBundle out;
    out.add("timeseries.tsv", tsv.str());
    out.add("summary.json", w.str());
    return out;
}

OutputBundle cmd_verify_mono(const PipelineContext& ctx) {
    const Scenario alpha = background_scenario(ctx.cfg);
    const Scenario beta = to_scenario(ctx.cfg);
    for (const InclusionSpec& inc : ctx.cfg.inclusions)
        if (inc.value < ctx.cfg.background)
            throw DomainError(
                "verify-mono: inclusion value below the background breaks the entrywise order");

    // Joint pole is the background pole (the larger of the two.)
    const AssembledSystem sys = assemble_system(alpha, ctx.assembly);
    const double pole = validity_domain(solve_modes(sys.matrices.L, sys.matrices.R)).lambda1;
    const std::vector<double> lambdas = lambda_grid(ctx, pole);

    const MonotonicityReport report =
        verify_main_theorem(alpha, beta, lambdas, 1e-12, ctx.assembly, ctx.sign);

    TsvWriter tsv({"lambda", "min_eig_beta_minus_alpha", "min_eig_alpha_minus_beta", "tol",
                   "relation"});
    for (const MonotonicityEntry& e : report.entries)
        tsv.row({format_double(e.lambda), format_double(e.verdict.min_eig_diff),
                 format_double(e.verdict.min_eig_diff_rev), format_double(e.verdict.tol),
                 to_string(e.verdict.relation)});

    JsonWriter w;
    w.begin_object();
    add_provenance(w, ctx, "verify-mono");
    w.key("pole_alpha").value(report.lambda1_alpha);
    w.key("pole_beta").value(report.lambda1_beta);
    w.key("consistent").value(report.consistent);
    w.key("relation").begin_array();
    for (const MonotonicityEntry& e : report.entries) w.value(to_string(e.verdict.relation));
    w.end_array();
    w.end_object();

    OutputBundle out;
    out.add("monotonicity.tsv", tsv.str());
    out.add("summary.json", w.str());
    return out;
}

OutputBundle cmd_reconstruct(const PipelineContext& ctx) {
    if (ctx.cfg.inclusions.empty())
        throw DomainError("reconstruct: scenario defines no anomaly");
    double eta_i = ctx.cfg.inclusions.front().value;
    for (const InclusionSpec& inc : ctx.cfg.inclusions)
        if (inc.value != eta_i)
            throw ArgumentError("reconstruct: a single inclusion resistivity is required");
    if (!(eta_i > ctx.cfg.background))
        throw DomainError("reconstruct: inclusion resistivity must exceed the background");

    const GridSpec& grid = ctx.cfg.grid;
    ImagingConfig config;
    config.eta_bg = ctx.cfg.background;
    config.eta_i = eta_i;
    config.lambda_samples = ctx.cfg.run.lambda_samples;
    config.tol_abs = ctx.cfg.run.tol;
    config.noise_delta = ctx.cfg.run.noise_delta;
    config.seed = ctx.cfg.run.seed;
    config.sign_convention = ctx.sign;
    config.assembly = ctx.assembly;
    config.test_elements = cover_with_test_elements(grid, ctx.cfg.imaging.test_block.w,
                                                    ctx.cfg.imaging.test_block.h,
                                                    ctx.cfg.imaging.test_block.stride);
    config.candidates = cover_with_test_elements(grid, ctx.cfg.imaging.candidate_block.w,
                                                 ctx.cfg.imaging.candidate_block.h,
                                                 ctx.cfg.imaging.candidate_block.stride);

    const CellSet truth = anomaly_cells(ctx.cfg);
    const ReconstructionResult result =
        reconstruct(grid, to_coil_set(ctx.cfg), truth, config);

    TsvWriter tsv({"side", "element", "lambda", "margin", "margin_normalized", "tol", "pass"});
    const auto dump_table = [&](const IndicatorTable& table, const char* side) {
        for (const IndicatorRow& row : table.rows)
            tsv.row({side, std::to_string(row.element), format_double(row.lambda),
                     format_double(row.margin), format_double(row.margin_normalized),
                     format_double(row.tol), row.pass ? "1" : "0"});
    };
    dump_table(result.test_table, "test");
    dump_table(result.candidate_table, "candidate");

    const bool upper_sound = truth.subset_of(result.upper);
    const bool lower_sound = result.lower.subset_of(truth);

    JsonWriter w;
    w.begin_object();
    add_provenance(w, ctx, "reconstruct");
    w.key("lambdas").begin_array();
    for (double lambda : result.lambdas) w.value(lambda);
    w.end_array();
    w.key("tol").begin_array();
    for (double t : result.tol) w.value(t);
    w.end_array();
    w.key("noise_delta").value(ctx.cfg.run.noise_delta);
    w.key("pole_background").value(result.pole_background);
    w.key("pole_full_inclusion").value(result.pole_full_inclusion);
    w.key("threshold_pole").value(result.threshold_pole);
    w.key("test_element_count").value(static_cast<int>(config.test_elements.size()));
    w.key("candidate_count").value(static_cast<int>(config.candidates.size()));
    w.key("anomaly").raw(cells_json(truth));
    w.key("upper").raw(cells_json(result.upper));
    w.key("lower").raw(cells_json(result.lower));
    w.key("anomaly_within_upper").value(upper_sound);
    w.key("lower_within_anomaly").value(lower_sound);
    w.end_object();

    OutputBundle out;
    out.add("indicators.tsv", tsv.str());
    out.add("summary.json", w.str());
    return out;
}

}  // namespace

void run_command(const std::string& subcommand, const std::string& scenario_path,
                 const std::string& out_dir, int threads_override) {
    PipelineContext ctx;
    ctx.cfg = parse_scenario_file(scenario_path);
    ctx.sign = ctx.cfg.run.sign_convention_override.value_or(kSignConvention);
    ctx.assembly.wire_radius = ctx.cfg.run.wire_radius.value_or(0.0);
    ctx.assembly.threads =
        threads_override > 0 ? threads_override : ctx.cfg.run.threads;

    OutputBundle out;
    if (subcommand == "spectrum")
        out = cmd_spectrum(ctx);
    else if (subcommand == "transfer")
        out = cmd_transfer(ctx);
    else if (subcommand == "simulate")
        out = cmd_simulate(ctx);
    else if (subcommand == "verify-mono")
        out = cmd_verify_mono(ctx);
    else if (subcommand == "reconstruct")
        out = cmd_reconstruct(ctx);
    else
        throw ArgumentError("unknown subcommand: " + subcommand);

    out.write_all(out_dir);
}

}  // namespace mit

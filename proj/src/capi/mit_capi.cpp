#include "mit/mit.h"

#include <cstring>
#include <string>

#include "core/assembly.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/run_command.hpp"
#include "core/scenario_io.hpp"
#include "core/spectral.hpp"
#include "core/transfer.hpp"

namespace {

thread_local std::string g_last_error;

mit_status status_of(mit::ErrorKind kind) {
    switch (kind) {
        case mit::ErrorKind::argument: return MIT_ERR_ARGUMENT;
        case mit::ErrorKind::parse: return MIT_ERR_PARSE;
        case mit::ErrorKind::domain: return MIT_ERR_DOMAIN;
        case mit::ErrorKind::numeric: return MIT_ERR_NUMERIC;
    }
    return MIT_ERR_ARGUMENT;
}

template <typename Fn>
mit_status guarded(Fn&& fn) {
    try {
        fn();
        return MIT_OK;
    } catch (const mit::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MIT_ERR_NUMERIC;
    }
}

mit_status fail_argument(const char* message) {
    g_last_error = message;
    return MIT_ERR_ARGUMENT;
}

int resolve_sign(int sign_convention) {
    return sign_convention == 0 ? mit::kSignConvention : sign_convention;
}

}  // namespace

struct mit_scenario {
    mit::ScenarioConfig cfg;
};

struct mit_system {
    mit::AssembledSystem sys;
};

struct mit_modal {
    mit::ModalBasis modal;
};

struct mit_transfer {
    mit::TransferMatrix tm;
};

extern "C" {

const char* mit_version(void) { return mit::kToolVersion; }

const char* mit_last_error(void) { return g_last_error.c_str(); }

mit_status mit_scenario_parse_file(const char* path, mit_scenario** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new mit_scenario{mit::parse_scenario_file(path)}; });
}

mit_status mit_scenario_parse_string(const char* text, mit_scenario** out) {
    if (!text || !out) return fail_argument("null argument");
    return guarded([&] { *out = new mit_scenario{mit::parse_scenario_text(text)}; });
}

void mit_scenario_free(mit_scenario* scenario) { delete scenario; }

mit_status mit_scenario_grid(const mit_scenario* scenario, int* nx, int* ny,
                             double* cell_size, double* thickness) {
    if (!scenario) return fail_argument("null scenario");
    if (nx) *nx = scenario->cfg.grid.nx;
    if (ny) *ny = scenario->cfg.grid.ny;
    if (cell_size) *cell_size = scenario->cfg.grid.cell_size;
    if (thickness) *thickness = scenario->cfg.grid.thickness;
    return MIT_OK;
}

mit_status mit_scenario_coil_count(const mit_scenario* scenario, int* count) {
    if (!scenario || !count) return fail_argument("null argument");
    *count = static_cast<int>(scenario->cfg.coils.size());
    return MIT_OK;
}

mit_status mit_scenario_render(const mit_scenario* scenario, char* buffer, int size,
                               int* needed) {
    if (!scenario) return fail_argument("null scenario");
    return guarded([&] {
        const std::string text = mit::render_scenario(scenario->cfg);
        const int required = static_cast<int>(text.size()) + 1;
        if (needed) *needed = required;
        if (buffer && size > 0) {
            const int copy = size < required ? size - 1 : required - 1;
            std::memcpy(buffer, text.data(), static_cast<std::size_t>(copy));
            buffer[copy] = '\0';
        }
    });
}

mit_status mit_assemble(const mit_scenario* scenario, int threads, mit_system** out) {
    if (!scenario || !out) return fail_argument("null argument");
    return guarded([&] {
        mit::AssemblyOptions opts;
        opts.wire_radius = scenario->cfg.run.wire_radius.value_or(0.0);
        opts.threads = threads > 0 ? threads : scenario->cfg.run.threads;
        *out = new mit_system{mit::assemble_system(mit::to_scenario(scenario->cfg), opts)};
    });
}

void mit_system_free(mit_system* system) { delete system; }

mit_status mit_system_loop_count(const mit_system* system, int* count) {
    if (!system || !count) return fail_argument("null argument");
    *count = system->sys.basis.loop_count();
    return MIT_OK;
}

mit_status mit_system_coil_count(const mit_system* system, int* count) {
    if (!system || !count) return fail_argument("null argument");
    *count = static_cast<int>(system->sys.matrices.M.cols());
    return MIT_OK;
}

mit_status mit_system_matrix(const mit_system* system, char which, double* buffer,
                             int rows, int cols) {
    if (!system || !buffer) return fail_argument("null argument");
    const Eigen::MatrixXd* m = nullptr;
    switch (which) {
        case 'L': m = &system->sys.matrices.L; break;
        case 'R': m = &system->sys.matrices.R; break;
        case 'M': m = &system->sys.matrices.M; break;
        default: return fail_argument("matrix selector must be 'L', 'R' or 'M'");
    }
    if (rows != m->rows() || cols != m->cols())
        return fail_argument("matrix dimensions do not match");
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) buffer[r * cols + c] = (*m)(r, c);
    return MIT_OK;
}

mit_status mit_solve_modes(const mit_system* system, mit_modal** out) {
    if (!system || !out) return fail_argument("null argument");
    return guarded([&] {
        *out = new mit_modal{mit::solve_modes(system->sys.matrices.L, system->sys.matrices.R)};
    });
}

void mit_modal_free(mit_modal* modal) { delete modal; }

mit_status mit_modal_count(const mit_modal* modal, int* count) {
    if (!modal || !count) return fail_argument("null argument");
    *count = modal->modal.count();
    return MIT_OK;
}

mit_status mit_modal_time_constants(const mit_modal* modal, double* buffer, int count) {
    if (!modal || !buffer) return fail_argument("null argument");
    if (count != modal->modal.count()) return fail_argument("count mismatch");
    for (int k = 0; k < count; ++k) buffer[k] = modal->modal.tau(k);
    return MIT_OK;
}

mit_status mit_modal_pole(const mit_modal* modal, double* pole) {
    if (!modal || !pole) return fail_argument("null argument");
    return guarded([&] { *pole = mit::validity_domain(modal->modal).lambda1; });
}

mit_status mit_transfer_direct(const mit_system* system, const mit_modal* modal,
                               double lambda, int sign_convention, mit_transfer** out) {
    if (!system || !modal || !out) return fail_argument("null argument");
    return guarded([&] {
        const mit::ValidityDomain domain = mit::validity_domain(modal->modal);
        *out = new mit_transfer{mit::transfer_direct(system->sys.matrices, domain, lambda,
                                                     resolve_sign(sign_convention))};
    });
}

mit_status mit_transfer_modal(const mit_system* system, const mit_modal* modal,
                              double lambda, int sign_convention, mit_transfer** out) {
    if (!system || !modal || !out) return fail_argument("null argument");
    return guarded([&] {
        *out = new mit_transfer{mit::transfer_modal(modal->modal, system->sys.matrices.M,
                                                    lambda, resolve_sign(sign_convention))};
    });
}

void mit_transfer_free(mit_transfer* transfer) { delete transfer; }

mit_status mit_transfer_dim(const mit_transfer* transfer, int* dim) {
    if (!transfer || !dim) return fail_argument("null argument");
    *dim = static_cast<int>(transfer->tm.H.rows());
    return MIT_OK;
}

mit_status mit_transfer_lambda(const mit_transfer* transfer, double* lambda) {
    if (!transfer || !lambda) return fail_argument("null argument");
    *lambda = transfer->tm.lambda;
    return MIT_OK;
}

mit_status mit_transfer_sign_convention(const mit_transfer* transfer, int* sign) {
    if (!transfer || !sign) return fail_argument("null argument");
    *sign = transfer->tm.sign_convention;
    return MIT_OK;
}

mit_status mit_transfer_values(const mit_transfer* transfer, double* buffer, int count) {
    if (!transfer || !buffer) return fail_argument("null argument");
    const int dim = static_cast<int>(transfer->tm.H.rows());
    if (count != dim * dim) return fail_argument("count mismatch");
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) buffer[r * dim + c] = transfer->tm.H(r, c);
    return MIT_OK;
}

mit_status mit_run(const char* subcommand, const char* scenario_path, const char* out_dir,
                   int threads) {
    if (!subcommand || !scenario_path || !out_dir) return fail_argument("null argument");
    return guarded([&] { mit::run_command(subcommand, scenario_path, out_dir, threads); });
}

}  // extern "C"

/* Magnetic induction tomography forward model, transfer-matrix evaluation and
 * monotonicity-based shape reconstruction.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every function returns a status code and leaves a
 * descriptive message retrievable with mit_last_error() on failure.
 */
#ifndef MIT_MIT_H
#define MIT_MIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mit_status {
    MIT_OK = 0,
    MIT_ERR_ARGUMENT = 1, /* invalid argument or handle */
    MIT_ERR_PARSE = 2,    /* scenario file malformed or invariant violated */
    MIT_ERR_DOMAIN = 3,   /* evaluation outside the validity domain */
    MIT_ERR_NUMERIC = 4   /* factorization/eigensolver failure */
} mit_status;

typedef struct mit_scenario mit_scenario; /* parsed scenario document */
typedef struct mit_system mit_system;     /* assembled operator matrices */
typedef struct mit_modal mit_modal;       /* generalized eigenpairs */
typedef struct mit_transfer mit_transfer; /* transfer matrix at one point */

const char* mit_version(void);

/* Message describing the most recent failure on this thread. */
const char* mit_last_error(void);

/* ------------------------------------------------------------------ */
/* Scenario ingestion                                                  */
/* ------------------------------------------------------------------ */
mit_status mit_scenario_parse_file(const char* path, mit_scenario** out);
mit_status mit_scenario_parse_string(const char* text, mit_scenario** out);
void mit_scenario_free(mit_scenario* scenario);

mit_status mit_scenario_grid(const mit_scenario* scenario, int* nx, int* ny,
                             double* cell_size, double* thickness);
mit_status mit_scenario_coil_count(const mit_scenario* scenario, int* count);

/* Canonical rendering of the parsed document; caller-owned buffer is filled
 * up to `size` bytes including the terminator. Required size (including the
 * terminator) is stored in *needed when non-NULL. */
mit_status mit_scenario_render(const mit_scenario* scenario, char* buffer, int size,
                               int* needed);

/* ------------------------------------------------------------------ */
/* Forward model                                                       */
/* ------------------------------------------------------------------ */
mit_status mit_assemble(const mit_scenario* scenario, int threads, mit_system** out);
void mit_system_free(mit_system* system);
mit_status mit_system_loop_count(const mit_system* system, int* count);
mit_status mit_system_coil_count(const mit_system* system, int* count);
/* which: 'L' (inductance), 'R' (resistance), 'M' (coupling). Row-major copy
 * into a caller buffer of rows*cols doubles. */
mit_status mit_system_matrix(const mit_system* system, char which, double* buffer,
                             int rows, int cols);

mit_status mit_solve_modes(const mit_system* system, mit_modal** out);
void mit_modal_free(mit_modal* modal);
mit_status mit_modal_count(const mit_modal* modal, int* count);
mit_status mit_modal_time_constants(const mit_modal* modal, double* buffer, int count);
/* Dominant pole -1/tau_1 bounding the validity domain from below. */
mit_status mit_modal_pole(const mit_modal* modal, double* pole);

/* Transfer matrix by direct factorization or by the modal expansion; both
 * require lambda above the pole. sign_convention 0 selects the library
 * default (-1); otherwise pass +1 or -1. */
mit_status mit_transfer_direct(const mit_system* system, const mit_modal* modal,
                               double lambda, int sign_convention, mit_transfer** out);
mit_status mit_transfer_modal(const mit_system* system, const mit_modal* modal,
                              double lambda, int sign_convention, mit_transfer** out);
void mit_transfer_free(mit_transfer* transfer);
mit_status mit_transfer_dim(const mit_transfer* transfer, int* dim);
mit_status mit_transfer_lambda(const mit_transfer* transfer, double* lambda);
mit_status mit_transfer_sign_convention(const mit_transfer* transfer, int* sign);
/* Row-major copy of the dim*dim symmetric matrix. */
mit_status mit_transfer_values(const mit_transfer* transfer, double* buffer, int count);

/* ------------------------------------------------------------------ */
/* Pipeline                                                            */
/* ------------------------------------------------------------------ */
/* Runs one of {spectrum, transfer, simulate, verify-mono, reconstruct} on a
 * scenario file and writes the result bundle into out_dir. No files are
 * written when the command fails. threads <= 0 keeps the scenario's value. */
mit_status mit_run(const char* subcommand, const char* scenario_path,
                   const char* out_dir, int threads);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MIT_MIT_H */

/* C interface to the fl-ist toolkit.
 *
 * All functions return an fl_status.  On failure a message is available from
 * fl_last_error() (thread-local, valid until the next call on that thread).
 * Strings returned through char** are owned by the caller and released with
 * fl_string_free.  JSON is used for structured inputs and outputs.
 */
#ifndef FLIST_FLIST_H
#define FLIST_FLIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(FLIST_BUILDING_LIBRARY)
#define FL_API __attribute__((visibility("default")))
#else
#define FL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fl_status {
  FL_OK = 0,
  FL_CONFIG_ERROR = 1,
  FL_IO_ERROR = 2,
  FL_DECAY_ERROR = 3,
  FL_ILL_CONDITIONED = 4,
  FL_DERIVATIVE_UNAVAILABLE = 5,
  FL_SPECTRAL_SINGULARITY = 6,
  FL_INSUFFICIENT_RANGE = 7,
  FL_WINDING_MISMATCH = 8,
  FL_MULTIPLE_ZERO = 9,
  FL_POLE_HIT = 10,
  FL_CONTOUR_PROXIMITY = 11,
  FL_SINGULAR_SYSTEM = 12,
  FL_WRONG_SOLITON_COUNT = 13,
  FL_ORIGIN_SINGULARITY = 14,
  FL_DEGENERATE_CONE = 15,
  FL_GAMMA_OVERFLOW = 16,
  FL_OUTSIDE_CONE = 17,
  FL_INSUFFICIENT_SAMPLES = 18,
  FL_BLOW_UP = 19,
  FL_STABILITY_VIOLATION = 20,
  FL_INTERNAL_ERROR = 99
} fl_status;

typedef struct fl_potential fl_potential;
typedef struct fl_evolution fl_evolution;

FL_API const char* fl_version(void);
FL_API const char* fl_last_error(void);
/* Error class name, e.g. "DecayError". */
FL_API const char* fl_status_name(fl_status status);
/* 1 for configuration and I/O failures, 0 for numeric failures and FL_OK. */
FL_API int fl_status_is_config(fl_status status);
FL_API void fl_string_free(char* s);

/* Provenance block {tool, version, command, parameters, inputs} where inputs
 * maps each path to a hash of its bytes. */
FL_API fl_status fl_provenance(const char* command, const char* parameters_json, const char* const* input_paths,
                               size_t n_inputs, char** provenance_json);

/* Sampled potentials on a uniform grid. */
FL_API fl_status fl_potential_create(double x_min, double x_max, size_t n, const double* re, const double* im,
                                     fl_potential** out);
FL_API fl_status fl_potential_read_csv(const char* path, fl_potential** out);
/* provenance_json is embedded in the CSV header line. */
FL_API fl_status fl_potential_write_csv(const fl_potential* u, const char* path, const char* provenance_json);
FL_API fl_status fl_potential_csv(const fl_potential* u, const char* provenance_json, char** csv);
FL_API fl_status fl_potential_grid(const fl_potential* u, double* x_min, double* x_max, size_t* n);
FL_API fl_status fl_potential_values(const fl_potential* u, double* re, double* im);
FL_API void fl_potential_free(fl_potential* u);

/* Direct scattering on a symmetric contour.  options: k_min, k_max,
 * n_per_ray, spacing ("log"|"linear"), k_switch, a_floor; optional
 * "box" [re_min, re_max, im_min, im_max] to fill the discrete spectrum.
 * Returns the scattering JSON document. */
FL_API fl_status fl_scatter(const fl_potential* u, const char* options_json, char** result_json);

/* Zeros of a in a first-quadrant box with norming constants.  options:
 * box, edge_samples, max_depth, newton_tol, simple_tol.  Returns ensemble JSON. */
FL_API fl_status fl_spectrum(const fl_potential* u, const char* options_json, char** ensemble_json);

/* Reflectionless field.  options: x_min, x_max, n_points, t, alpha, beta. */
FL_API fl_status fl_nsoliton(const char* ensemble_json, const char* options_json, fl_potential** out);

/* PDE oracle.  options: alpha, beta, dt, t_end, snap_every, dealias_fraction,
 * zero_mode ("analytic_limit"|"project_out"), blowup_threshold. */
FL_API fl_status fl_evolve(const fl_potential* u0, const char* options_json, fl_evolution** out);
FL_API size_t fl_evolution_count(const fl_evolution* run);
FL_API fl_status fl_evolution_snapshot(const fl_evolution* run, size_t i, double* t, fl_potential** out);
FL_API fl_status fl_evolution_summary(const fl_evolution* run, char** summary_json);
FL_API void fl_evolution_free(fl_evolution* run);

/* Leading-order asymptotics from scattering JSON (with discrete data).
 * options: alpha, beta, cone [x1, x2, v1, v2], t, n_points (cone slice
 * samples).  Returns JSON rows {x, re_u, im_u, abs_u, bound}. */
FL_API fl_status fl_asymptote(const char* scattering_json, const char* options_json, char** result_json);
/* Residual study against the PDE oracle started from u0.  options as for
 * fl_asymptote plus dt and times [t...].  Returns JSON rows
 * {t, residual_sup, bound, slope_running}. */
FL_API fl_status fl_resolution_study(const fl_potential* u0, const char* scattering_json, const char* options_json,
                                     char** result_json);

/* Acceptance suites: trivial, roundtrip, soliton, rates, all.  *all_pass is
 * set to 1 when every record passes. */
FL_API fl_status fl_verify(const char* suite, uint64_t seed, char** report_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* FLIST_FLIST_H */

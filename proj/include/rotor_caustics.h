#ifndef ROTOR_CAUSTICS_H
#define ROTOR_CAUSTICS_H

/*
 * C interface to the near-resonant kicked rotor library.
 *
 * Every fallible call returns an rc_status; on failure a description is
 * available from rc_last_error() on the calling thread until the next call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_destroy function (which accepts NULL).
 *
 * Momentum states are passed as interleaved (re, im) doubles in wrap-around
 * order: bin b holds p = b for b < M/2 and p = b - M otherwise.
 */

#include <stddef.h>

#if defined(ROTOR_BUILDING_LIBRARY)
#define ROTOR_API __attribute__((visibility("default")))
#else
#define ROTOR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rc_status {
  RC_OK = 0,
  RC_ERR_VALIDATION = 1,
  RC_ERR_SIZE_MISMATCH = 2,
  RC_ERR_NOT_NORMALIZED = 3,
  RC_ERR_TAIL_MASS = 4,
  RC_ERR_DIVERGENCE = 5,
  RC_ERR_SEPARATRIX = 6,
  RC_ERR_NO_ROOT = 7,
  RC_ERR_NON_CONVERGENCE = 8,
  RC_ERR_IO = 9,
  RC_ERR_NULL_ARGUMENT = 10,
  RC_ERR_INTERNAL = 11
} rc_status;

typedef struct rc_params rc_params;
typedef struct rc_record rc_record;
typedef struct rc_config rc_config;
typedef struct rc_manifest rc_manifest;

typedef struct rc_peak {
  size_t kick;
  size_t node;
  double theta;
  double value;
} rc_peak;

typedef struct rc_scaling_record {
  double K;
  double delta;
  double lambda;
  double measured;
  double predicted;
  size_t peak_kick;
  double peak_theta;
} rc_scaling_record;

ROTOR_API const char* rc_version(void);
ROTOR_API const char* rc_last_error(void);
ROTOR_API const char* rc_status_name(rc_status status);
/* Process exit code for a status: 0 ok, 1 validation-type, 2 otherwise. */
ROTOR_API int rc_exit_code(rc_status status);

/* ---- parameters ---- */

/* n_kicks is signed so that negative counts are rejected rather than wrapped. */
ROTOR_API rc_status rc_params_create(double K, double delta, size_t basis_size, long long n_kicks,
                                     double g, rc_params** out);
ROTOR_API void rc_params_destroy(rc_params* params);
ROTOR_API double rc_params_period(const rc_params* params);
ROTOR_API size_t rc_params_basis_size(const rc_params* params);
ROTOR_API size_t rc_params_kicks(const rc_params* params);

/* ---- quantum evolution ---- */

/* One Floquet period of a normalized state (g must be 0). in and out hold
 * 2 * basis_size doubles and may alias. */
ROTOR_API rc_status rc_floquet_step(const rc_params* params, const double* in, double* out);
/* Angle-space values psi(theta_j) of a momentum state (interleaved). */
ROTOR_API rc_status rc_to_angle(const double* state, size_t basis_size, double* angle_out);
ROTOR_API rc_status rc_tail_mass(const double* state, size_t basis_size, double* out);

/* Evolves the uniform state for n_kicks periods. */
ROTOR_API rc_status rc_evolve_uniform(const rc_params* params, int enforce_tail_mass,
                                      rc_record** out);
/* Same, starting from an arbitrary normalized momentum state. */
ROTOR_API rc_status rc_evolve_state(const rc_params* params, const double* state,
                                    int enforce_tail_mass, rc_record** out);
/* Mean-field evolution with interaction g from params; variant is
 * "continuous" or "kicked"; substeps applies to the continuous variant. */
ROTOR_API rc_status rc_evolve_nonlinear(const rc_params* params, const char* variant,
                                        size_t substeps, rc_record** out);
ROTOR_API void rc_record_destroy(rc_record* record);
ROTOR_API size_t rc_record_rows(const rc_record* record);
ROTOR_API size_t rc_record_cols(const rc_record* record);
/* Row-major |psi| field (rows x cols), valid while the record lives. */
ROTOR_API const double* rc_record_field(const rc_record* record);
/* |psi(pi)| per kick (rows values). */
ROTOR_API const double* rc_record_axis_cut(const rc_record* record);
ROTOR_API double rc_record_tail_mass(const rc_record* record);
/* Maximum over kicks [first, last]; axis_only restricts to theta = pi. */
ROTOR_API rc_status rc_record_peak(const rc_record* record, size_t first, size_t last,
                                   int axis_only, rc_peak* out);
ROTOR_API rc_status rc_window_peak_ratio(const rc_record* run, const rc_record* baseline,
                                         unsigned m, double lo, double hi, double* out);

/* ---- classical maps ---- */

/* map is "standard" or "eps_classical". */
ROTOR_API rc_status rc_map_step(const rc_params* params, const char* map, double theta, double p,
                                double* theta_out, double* p_out);

/* ---- elliptic functions ---- */

ROTOR_API rc_status rc_complete_K(double k, double* out);
ROTOR_API rc_status rc_jacobi(double u, double k, double* sn, double* cn, double* dn);

/* ---- semiclassics ---- */

ROTOR_API rc_status rc_pendulum_solution(double theta0, double t, double K, double delta,
                                         double* out);
/* (2m+1) K(|k|) / sqrt(K delta), in kicks. */
ROTOR_API rc_status rc_caustic_time(double k, double K, double delta, unsigned m, double* out);
/* Caustic root in continuous time t on the default bracket. */
ROTOR_API rc_status rc_solve_caustic(double k, double K, double delta, unsigned m, double* out);
ROTOR_API rc_status rc_variational_derivative(double theta0, double t, double K, double delta,
                                              double* out);
ROTOR_API rc_status rc_gelfand_yaglom(double theta0, double t, double K, double delta,
                                      double* out);

/* ---- scaling ---- */

ROTOR_API double rc_lambda(double K, double delta);
ROTOR_API rc_status rc_measure_cusp_amplitude(const rc_params* params, rc_scaling_record* out);
ROTOR_API rc_status rc_cusp_integral(double angle, double t, double K, double delta,
                                     size_t quad_points, double* re, double* im);

/* ---- configuration and runs ---- */

/* mode: evolve | classical | semiclassical | caustics | scaling | nonlinear | sweep */
ROTOR_API rc_status rc_config_create(const char* mode, rc_config** out);
ROTOR_API void rc_config_destroy(rc_config* config);
/* Reads key = value lines; later rc_config_set calls override them. */
ROTOR_API rc_status rc_config_load_file(rc_config* config, const char* path);
ROTOR_API rc_status rc_config_set(rc_config* config, const char* key, const char* value);
/* Validates the merged settings. On failure every problem is listed by
 * rc_config_problem_count / rc_config_problem. */
ROTOR_API rc_status rc_config_validate(rc_config* config);
ROTOR_API size_t rc_config_problem_count(const rc_config* config);
ROTOR_API const char* rc_config_problem(const rc_config* config, size_t index);

/* Validates and runs. Configuration problems are returned as a status and
 * no manifest is produced; module failures produce a manifest whose exit
 * code is nonzero (the call itself still returns RC_OK). */
ROTOR_API rc_status rc_run(rc_config* config, rc_manifest** out);
ROTOR_API void rc_manifest_destroy(rc_manifest* manifest);
ROTOR_API int rc_manifest_exit_code(const rc_manifest* manifest);
ROTOR_API const char* rc_manifest_json(const rc_manifest* manifest);
/* Empty string on success. */
ROTOR_API const char* rc_manifest_error(const rc_manifest* manifest);
ROTOR_API size_t rc_manifest_file_count(const rc_manifest* manifest);
ROTOR_API const char* rc_manifest_file_name(const rc_manifest* manifest, size_t index);

#ifdef __cplusplus
}
#endif

#endif

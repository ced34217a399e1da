#include "rotor_caustics.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "rotor/app/config.hpp"
#include "rotor/app/output.hpp"
#include "rotor/app/run.hpp"
#include "rotor/classical.hpp"
#include "rotor/core.hpp"
#include "rotor/elliptic.hpp"
#include "rotor/error.hpp"
#include "rotor/nonlinear.hpp"
#include "rotor/quantum.hpp"
#include "rotor/scaling.hpp"
#include "rotor/semiclassics.hpp"

struct rc_params {
  rotor::SimParams value;
};

struct rc_record {
  rotor::quantum::EvolutionRecord value;
};

struct rc_config {
  rotor::app::Mode mode;
  rotor::app::KeyValues file_values;
  rotor::app::KeyValues overrides;
  std::vector<std::string> problems;
};

struct rc_manifest {
  rotor::app::Manifest value;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

rc_status status_of(rotor::ErrorKind kind) {
  using rotor::ErrorKind;
  switch (kind) {
    case ErrorKind::validation: return RC_ERR_VALIDATION;
    case ErrorKind::size_mismatch: return RC_ERR_SIZE_MISMATCH;
    case ErrorKind::not_normalized: return RC_ERR_NOT_NORMALIZED;
    case ErrorKind::tail_mass: return RC_ERR_TAIL_MASS;
    case ErrorKind::divergence: return RC_ERR_DIVERGENCE;
    case ErrorKind::separatrix: return RC_ERR_SEPARATRIX;
    case ErrorKind::no_root: return RC_ERR_NO_ROOT;
    case ErrorKind::non_convergence: return RC_ERR_NON_CONVERGENCE;
    case ErrorKind::io: return RC_ERR_IO;
  }
  return RC_ERR_INTERNAL;
}

rc_status fail(rc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
rc_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return RC_OK;
  } catch (const rotor::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RC_ERR_INTERNAL, e.what());
  }
}

#define RC_REQUIRE(ptr)                                              \
  do {                                                               \
    if ((ptr) == nullptr) return fail(RC_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

std::vector<rotor::Complex> unpack(const double* data, std::size_t M) {
  std::vector<rotor::Complex> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = {data[2 * i], data[2 * i + 1]};
  return out;
}

void pack(std::span<const rotor::Complex> values, double* out) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[2 * i] = values[i].real();
    out[2 * i + 1] = values[i].imag();
  }
}

}  // namespace

extern "C" {

const char* rc_version(void) { return rotor::app::artifact_version(); }

const char* rc_last_error(void) { return g_last_error.c_str(); }

const char* rc_status_name(rc_status status) {
  switch (status) {
    case RC_OK: return "ok";
    case RC_ERR_VALIDATION: return "validation";
    case RC_ERR_SIZE_MISMATCH: return "size_mismatch";
    case RC_ERR_NOT_NORMALIZED: return "not_normalized";
    case RC_ERR_TAIL_MASS: return "tail_mass";
    case RC_ERR_DIVERGENCE: return "divergence";
    case RC_ERR_SEPARATRIX: return "separatrix";
    case RC_ERR_NO_ROOT: return "no_root";
    case RC_ERR_NON_CONVERGENCE: return "non_convergence";
    case RC_ERR_IO: return "io";
    case RC_ERR_NULL_ARGUMENT: return "null_argument";
    case RC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int rc_exit_code(rc_status status) {
  switch (status) {
    case RC_OK: return 0;
    case RC_ERR_VALIDATION:
    case RC_ERR_SIZE_MISMATCH:
    case RC_ERR_NOT_NORMALIZED:
    case RC_ERR_NULL_ARGUMENT: return 1;
    default: return 2;
  }
}

rc_status rc_params_create(double K, double delta, size_t basis_size, long long n_kicks, double g,
                           rc_params** out) {
  RC_REQUIRE(out);
  *out = nullptr;
  if (n_kicks < 0) return fail(RC_ERR_VALIDATION, "n_kicks must be >= 0");
  return guarded([&] {
    *out = new rc_params{rotor::SimParams::make(K, delta, basis_size,
                                                static_cast<std::size_t>(n_kicks), g)};
  });
}

void rc_params_destroy(rc_params* params) { delete params; }

double rc_params_period(const rc_params* params) { return params ? params->value.period() : 0.0; }

size_t rc_params_basis_size(const rc_params* params) {
  return params ? params->value.basis_size() : 0;
}

size_t rc_params_kicks(const rc_params* params) { return params ? params->value.n_kicks() : 0; }

rc_status rc_floquet_step(const rc_params* params, const double* in, double* out) {
  RC_REQUIRE(params);
  RC_REQUIRE(in);
  RC_REQUIRE(out);
  return guarded([&] {
    const std::size_t M = params->value.basis_size();
    const rotor::WaveState state(unpack(in, M));
    const auto next = rotor::quantum::floquet_step(state, params->value);
    pack(next.amplitudes(), out);
  });
}

rc_status rc_to_angle(const double* state, size_t basis_size, double* angle_out) {
  RC_REQUIRE(state);
  RC_REQUIRE(angle_out);
  return guarded([&] {
    const rotor::WaveState s(unpack(state, basis_size));
    pack(rotor::to_angle(s), angle_out);
  });
}

rc_status rc_tail_mass(const double* state, size_t basis_size, double* out) {
  RC_REQUIRE(state);
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::quantum::tail_mass(rotor::WaveState(unpack(state, basis_size))); });
}

rc_status rc_evolve_uniform(const rc_params* params, int enforce_tail_mass, rc_record** out) {
  RC_REQUIRE(params);
  RC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    rotor::quantum::EvolveOptions options;
    options.enforce_tail_mass = enforce_tail_mass != 0;
    auto rec = rotor::quantum::evolve(rotor::uniform_state(params->value.basis_size()),
                                      params->value, options);
    *out = new rc_record{std::move(rec)};
  });
}

rc_status rc_evolve_state(const rc_params* params, const double* state, int enforce_tail_mass,
                          rc_record** out) {
  RC_REQUIRE(params);
  RC_REQUIRE(state);
  RC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    rotor::quantum::EvolveOptions options;
    options.enforce_tail_mass = enforce_tail_mass != 0;
    const rotor::WaveState initial(unpack(state, params->value.basis_size()));
    *out = new rc_record{rotor::quantum::evolve(initial, params->value, options)};
  });
}

rc_status rc_evolve_nonlinear(const rc_params* params, const char* variant, size_t substeps,
                              rc_record** out) {
  RC_REQUIRE(params);
  RC_REQUIRE(variant);
  RC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const rotor::nonlinear::NonlinearConfig config{
        params->value.g(), rotor::nonlinear::parse_variant(variant), substeps};
    *out = new rc_record{rotor::nonlinear::evolve(
        rotor::uniform_state(params->value.basis_size()), params->value, config)};
  });
}

void rc_record_destroy(rc_record* record) { delete record; }

size_t rc_record_rows(const rc_record* record) { return record ? record->value.field.rows() : 0; }

size_t rc_record_cols(const rc_record* record) { return record ? record->value.field.cols() : 0; }

const double* rc_record_field(const rc_record* record) {
  return record ? record->value.field.data().data() : nullptr;
}

const double* rc_record_axis_cut(const rc_record* record) {
  return record ? record->value.axis_cut.data() : nullptr;
}

double rc_record_tail_mass(const rc_record* record) {
  return record ? record->value.tail_mass : 0.0;
}

rc_status rc_record_peak(const rc_record* record, size_t first, size_t last, int axis_only,
                         rc_peak* out) {
  RC_REQUIRE(record);
  RC_REQUIRE(out);
  return guarded([&] {
    const rotor::quantum::KickWindow window{first, last};
    const auto p = axis_only ? rotor::quantum::axis_peak(record->value, window)
                             : rotor::quantum::peak_amplitude(record->value, window);
    *out = {p.kick, p.node, p.theta, p.value};
  });
}

rc_status rc_window_peak_ratio(const rc_record* run, const rc_record* baseline, unsigned m,
                               double lo, double hi, double* out) {
  RC_REQUIRE(run);
  RC_REQUIRE(baseline);
  RC_REQUIRE(out);
  return guarded([&] {
    *out = rotor::nonlinear::window_peak_ratio(run->value, baseline->value, m, lo, hi);
  });
}

rc_status rc_map_step(const rc_params* params, const char* map, double theta, double p,
                      double* theta_out, double* p_out) {
  RC_REQUIRE(params);
  RC_REQUIRE(map);
  RC_REQUIRE(theta_out);
  RC_REQUIRE(p_out);
  return guarded([&] {
    const auto next = rotor::classical::map_step({theta, p}, rotor::classical::parse_map_kind(map),
                                                 params->value);
    *theta_out = next.theta;
    *p_out = next.p;
  });
}

rc_status rc_complete_K(double k, double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::elliptic::complete_K(k); });
}

rc_status rc_jacobi(double u, double k, double* sn, double* cn, double* dn) {
  RC_REQUIRE(sn);
  RC_REQUIRE(cn);
  RC_REQUIRE(dn);
  return guarded([&] {
    if (!std::isfinite(u) || !std::isfinite(k) || std::abs(k) > 1.0) {
      throw rotor::Error(rotor::ErrorKind::validation, "jacobi needs finite u and |k| <= 1");
    }
    const auto t = rotor::elliptic::jacobi(u, k);
    *sn = t.sn;
    *cn = t.cn;
    *dn = t.dn;
  });
}

rc_status rc_pendulum_solution(double theta0, double t, double K, double delta, double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::semiclassics::pendulum_solution(theta0, t, K, delta); });
}

rc_status rc_caustic_time(double k, double K, double delta, unsigned m, double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::semiclassics::caustic_time_for_k(k, K, delta, m); });
}

rc_status rc_solve_caustic(double k, double K, double delta, unsigned m, double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::semiclassics::solve_caustic_equation(k, K, delta, m); });
}

rc_status rc_variational_derivative(double theta0, double t, double K, double delta,
                                    double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::semiclassics::variational_derivative(theta0, t, K, delta); });
}

rc_status rc_gelfand_yaglom(double theta0, double t, double K, double delta, double* out) {
  RC_REQUIRE(out);
  return guarded([&] { *out = rotor::semiclassics::gelfand_yaglom(theta0, t, K, delta); });
}

double rc_lambda(double K, double delta) {
  try {
    return rotor::scaling::lambda_param(K, delta);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return std::nan("");
  }
}

rc_status rc_measure_cusp_amplitude(const rc_params* params, rc_scaling_record* out) {
  RC_REQUIRE(params);
  RC_REQUIRE(out);
  return guarded([&] {
    const auto r = rotor::scaling::measure_cusp_amplitude(params->value);
    *out = {r.K, r.delta, r.lambda, r.measured, r.predicted, r.peak_kick, r.peak_theta};
  });
}

rc_status rc_cusp_integral(double angle, double t, double K, double delta, size_t quad_points,
                           double* re, double* im) {
  RC_REQUIRE(re);
  RC_REQUIRE(im);
  return guarded([&] {
    const auto r = rotor::scaling::cusp_integral(angle, t, K, delta, quad_points);
    *re = r.value.real();
    *im = r.value.imag();
  });
}

rc_status rc_config_create(const char* mode, rc_config** out) {
  RC_REQUIRE(mode);
  RC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new rc_config{rotor::app::parse_mode(mode), {}, {}, {}}; });
}

void rc_config_destroy(rc_config* config) { delete config; }

rc_status rc_config_load_file(rc_config* config, const char* path) {
  RC_REQUIRE(config);
  RC_REQUIRE(path);
  config->problems.clear();
  const rc_status s = guarded([&] { config->file_values = rotor::app::load_key_values(path); });
  if (s != RC_OK) config->problems.push_back(g_last_error);
  return s;
}

rc_status rc_config_set(rc_config* config, const char* key, const char* value) {
  RC_REQUIRE(config);
  RC_REQUIRE(key);
  RC_REQUIRE(value);
  config->overrides[key] = value;
  return RC_OK;
}

rc_status rc_config_validate(rc_config* config) {
  RC_REQUIRE(config);
  config->problems.clear();
  g_last_error.clear();
  try {
    rotor::app::parse_config(config->mode, config->file_values, config->overrides);
    return RC_OK;
  } catch (const rotor::app::ConfigError& e) {
    config->problems = e.problems();
    return fail(RC_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    config->problems = {e.what()};
    return fail(RC_ERR_INTERNAL, e.what());
  }
}

size_t rc_config_problem_count(const rc_config* config) {
  return config ? config->problems.size() : 0;
}

const char* rc_config_problem(const rc_config* config, size_t index) {
  if (!config || index >= config->problems.size()) return "";
  return config->problems[index].c_str();
}

rc_status rc_run(rc_config* config, rc_manifest** out) {
  RC_REQUIRE(config);
  RC_REQUIRE(out);
  *out = nullptr;
  const rc_status s = rc_config_validate(config);
  if (s != RC_OK) return s;
  return guarded([&] {
    auto cfg = rotor::app::parse_config(config->mode, config->file_values, config->overrides);
    auto m = rotor::app::run(cfg);
    auto json = m.to_json();
    *out = new rc_manifest{std::move(m), std::move(json)};
  });
}

void rc_manifest_destroy(rc_manifest* manifest) { delete manifest; }

int rc_manifest_exit_code(const rc_manifest* manifest) {
  return manifest ? manifest->value.exit_code : 2;
}

const char* rc_manifest_json(const rc_manifest* manifest) {
  return manifest ? manifest->json.c_str() : "";
}

const char* rc_manifest_error(const rc_manifest* manifest) {
  return manifest ? manifest->value.error_message.c_str() : "";
}

size_t rc_manifest_file_count(const rc_manifest* manifest) {
  return manifest ? manifest->value.files.size() : 0;
}

const char* rc_manifest_file_name(const rc_manifest* manifest, size_t index) {
  if (!manifest || index >= manifest->value.files.size()) return "";
  return manifest->value.files[index].name.c_str();
}

}  // extern "C"

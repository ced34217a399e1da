#include "rotor/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "core/fft.hpp"
#include "rotor/error.hpp"

namespace rotor::nonlinear {

Variant parse_variant(const std::string& name) {
  if (name == "continuous") return Variant::continuous;
  if (name == "kicked") return Variant::kicked;
  throw Error(ErrorKind::validation, "unknown nonlinear variant '" + name + "'");
}

const char* to_string(Variant variant) noexcept {
  return variant == Variant::continuous ? "continuous" : "kicked";
}

NonlinearOperator::NonlinearOperator(const SimParams& params, const NonlinearConfig& config)
    : config_(config), linear_(params.with_g(0.0)) {
  if (config.substeps == 0) throw Error(ErrorKind::validation, "substeps must be >= 1");
  if (!std::isfinite(config.g)) throw Error(ErrorKind::validation, "g must be finite");
  const std::size_t M = params.basis_size();
  const AngleGrid grid(M);
  const double tau = params.delta() / static_cast<double>(config.substeps);
  half_tau_ = 0.5 * tau;
  free_phase_.resize(M);
  substep_phase_.resize(M);
  kick_phase_.resize(M);
  kick_potential_.resize(M);
  for (std::size_t b = 0; b < M; ++b) {
    const auto p = static_cast<double>(momentum_of_bin(b, M));
    free_phase_[b] = std::polar(1.0, -0.5 * p * p * params.delta());
    substep_phase_[b] = std::polar(1.0, -0.5 * p * p * tau);
    kick_potential_[b] = params.K() * std::cos(grid.node(b));
    kick_phase_[b] = std::polar(1.0, -kick_potential_[b]);
  }
}

std::vector<Complex> NonlinearOperator::apply(WaveState& state) const {
  // g = 0 reduces exactly to the linear map.
  if (config_.g == 0.0) return linear_.apply(state);

  const std::size_t M = state.size();
  if (M != kick_phase_.size()) {
    throw Error(ErrorKind::size_mismatch, "state and operator sizes differ");
  }
  const auto& plan = detail::FftPlan::get(M);
  detail::FftBuffer buf(M);
  auto s = buf.span();
  auto amps = state.amplitudes();
  // Buffers hold psi(theta_j) in angle space and c_p in momentum space.
  const double to_psi = 1.0 / std::sqrt(kTwoPi);
  const double to_amp = std::sqrt(kTwoPi) / static_cast<double>(M);
  const double g = config_.g;

  auto to_angle_space = [&] {
    plan.backward(buf);
    for (auto& v : s) v *= to_psi;
  };
  auto to_momentum_space = [&] {
    plan.forward(buf);
    for (auto& v : s) v *= to_amp;
  };
  auto interaction = [&](double duration) {
    for (auto& v : s) v *= std::polar(1.0, -g * std::norm(v) * duration);
  };

  std::copy(amps.begin(), amps.end(), s.begin());
  if (config_.variant == Variant::kicked) {
    for (std::size_t b = 0; b < M; ++b) s[b] *= free_phase_[b];
    to_angle_space();
    for (std::size_t j = 0; j < M; ++j) {
      s[j] *= std::polar(1.0, -(kick_potential_[j] + g * std::norm(s[j])));
    }
  } else {
    to_angle_space();
    for (std::size_t step = 0; step < config_.substeps; ++step) {
      interaction(half_tau_);
      to_momentum_space();
      for (std::size_t b = 0; b < M; ++b) s[b] *= substep_phase_[b];
      to_angle_space();
      interaction(half_tau_);
    }
    for (std::size_t j = 0; j < M; ++j) s[j] *= kick_phase_[j];
  }

  std::vector<Complex> angle(s.begin(), s.end());
  to_momentum_space();
  std::copy(s.begin(), s.end(), amps.begin());
  return angle;
}

WaveState nonlinear_floquet_step(const WaveState& state, const SimParams& params,
                                 const NonlinearConfig& config) {
  quantum::require_normalized(state);
  if (state.size() != params.basis_size()) {
    throw Error(ErrorKind::size_mismatch, "state size differs from basis_size");
  }
  WaveState next = state;
  NonlinearOperator(params, config).apply(next);
  return next;
}

quantum::EvolutionRecord evolve(const WaveState& initial, const SimParams& params,
                                const NonlinearConfig& config,
                                const quantum::EvolveOptions& options) {
  const NonlinearOperator op(params, config);
  return quantum::record_evolution(initial, params.with_g(config.g),
                                   [&op](WaveState& s) { return op.apply(s); }, options);
}

namespace {

double window_max(const quantum::EvolutionRecord& rec, quantum::KickWindow w) {
  return quantum::peak_amplitude(rec, w).value;
}

}  // namespace

double window_peak_ratio(const quantum::EvolutionRecord& run,
                         const quantum::EvolutionRecord& baseline, unsigned m, double lo,
                         double hi) {
  const auto window = quantum::caustic_window(baseline.params, m, lo, hi);
  return window_max(run, window) / window_max(baseline, window);
}

double suppression_metric(const SimParams& params, const NonlinearConfig& config,
                          const quantum::EvolutionRecord& baseline) {
  if (baseline.params.g() != 0.0) throw Error(ErrorKind::validation, "baseline must have g = 0");
  if (baseline.params.K() != params.K() || baseline.params.delta() != params.delta() ||
      baseline.params.basis_size() != params.basis_size()) {
    throw Error(ErrorKind::validation, "baseline parameters differ from the interacting run");
  }
  const auto run_params = params.with_kicks(baseline.field.rows() - 1);
  const auto run = evolve(uniform_state(run_params.basis_size()), run_params, config);
  return window_peak_ratio(run, baseline, 1);
}

}  // namespace rotor::nonlinear

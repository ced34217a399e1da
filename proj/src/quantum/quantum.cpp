#include "rotor/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/fft.hpp"
#include "core/text.hpp"
#include "rotor/semiclassics.hpp"

namespace rotor::quantum {

FloquetOperator::FloquetOperator(const SimParams& params) {
  const std::size_t M = params.basis_size();
  free_phase_.resize(M);
  kick_phase_.resize(M);
  const AngleGrid grid(M);
  for (std::size_t b = 0; b < M; ++b) {
    const auto p = static_cast<double>(momentum_of_bin(b, M));
    free_phase_[b] = std::polar(1.0, -0.5 * p * p * params.delta());
    kick_phase_[b] = std::polar(1.0, -params.K() * std::cos(grid.node(b)));
  }
}

std::vector<Complex> FloquetOperator::apply(WaveState& state) const {
  const std::size_t M = basis_size();
  if (state.size() != M) throw Error(ErrorKind::size_mismatch, "state and operator sizes differ");
  detail::FftBuffer buf(M);
  auto s = buf.span();
  auto amps = state.amplitudes();
  for (std::size_t b = 0; b < M; ++b) s[b] = amps[b] * free_phase_[b];
  const auto& plan = detail::FftPlan::get(M);
  plan.backward(buf);
  const double density = 1.0 / std::sqrt(kTwoPi);
  std::vector<Complex> angle(M);
  for (std::size_t j = 0; j < M; ++j) {
    s[j] *= kick_phase_[j];
    angle[j] = s[j] * density;
  }
  plan.forward(buf);
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t b = 0; b < M; ++b) amps[b] = s[b] * inv;
  return angle;
}

double tail_mass(const WaveState& state) {
  const std::size_t M = state.size();
  const auto quarter = static_cast<std::int64_t>(M / 4);
  double s = 0.0;
  for (std::size_t b = 0; b < M; ++b) {
    const auto p = momentum_of_bin(b, M);
    if (p >= quarter || p <= -quarter) s += std::norm(state.amplitudes()[b]);
  }
  return s;
}

void require_normalized(const WaveState& state) {
  const double dev = std::abs(state.norm_squared() - 1.0);
  if (!(dev <= kNormTolerance)) {
    throw Error(ErrorKind::not_normalized,
                "state norm deviates from 1 by " + format_double(dev));
  }
}

namespace {

void require_linear(const SimParams& params) {
  if (params.g() != 0.0) {
    throw Error(ErrorKind::validation,
                "linear Floquet evolution requires g = 0; use the nonlinear stepper");
  }
}

}  // namespace

WaveState floquet_step(const WaveState& state, const SimParams& params) {
  require_linear(params);
  require_normalized(state);
  if (state.size() != params.basis_size()) {
    throw Error(ErrorKind::size_mismatch, "state size differs from basis_size");
  }
  WaveState next = state;
  FloquetOperator(params).apply(next);
  return next;
}

EvolutionRecord record_evolution(const WaveState& initial, const SimParams& params,
                                 const Stepper& step, const EvolveOptions& options) {
  require_normalized(initial);
  const std::size_t M = params.basis_size();
  if (initial.size() != M) throw Error(ErrorKind::size_mismatch, "state size differs from basis_size");
  const std::size_t n = params.n_kicks();
  const std::size_t axis = AngleGrid(M).axis_node();

  EvolutionRecord rec{params, AmplitudeField(M, n + 1), {}, tail_mass(initial)};
  rec.axis_cut.reserve(n + 1);
  rec.field.append_moduli(to_angle(initial));
  rec.axis_cut.push_back(rec.field.at(0, axis));

  WaveState state = initial;
  for (std::size_t kick = 1; kick <= n; ++kick) {
    const auto angle = step(state);
    rec.field.append_moduli(angle);
    rec.axis_cut.push_back(rec.field.at(kick, axis));
    rec.tail_mass = std::max(rec.tail_mass, tail_mass(state));
  }
  if (options.enforce_tail_mass && !(rec.tail_mass <= options.tail_limit)) {
    throw Error(ErrorKind::tail_mass,
                "momentum tail mass " + format_double(rec.tail_mass) + " exceeds " +
                    format_double(options.tail_limit) + "; increase basis_size");
  }
  return rec;
}

EvolutionRecord evolve(const WaveState& initial, const SimParams& params,
                       const EvolveOptions& options) {
  require_linear(params);
  const FloquetOperator op(params);
  return record_evolution(initial, params,
                          [&op](WaveState& s) { return op.apply(s); }, options);
}

namespace {

void check_window(const EvolutionRecord& record, KickWindow window) {
  if (window.first > window.last) throw Error(ErrorKind::validation, "empty kick window");
  if (window.last >= record.field.rows()) {
    throw Error(ErrorKind::validation, "kick window [" + std::to_string(window.first) + ", " +
                                           std::to_string(window.last) +
                                           "] exceeds the recorded kicks");
  }
}

}  // namespace

PeakSample peak_amplitude(const EvolutionRecord& record, KickWindow window) {
  check_window(record, window);
  const AngleGrid grid = record.field.grid();
  PeakSample best{window.first, 0, 0.0, -1.0};
  for (std::size_t n = window.first; n <= window.last; ++n) {
    const auto row = record.field.row(n);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > best.value) best = {n, j, 0.0, row[j]};
    }
  }
  best.theta = grid.node(best.node);
  return best;
}

PeakSample axis_peak(const EvolutionRecord& record, KickWindow window) {
  check_window(record, window);
  const AngleGrid grid = record.field.grid();
  PeakSample best{window.first, grid.axis_node(), grid.node(grid.axis_node()), -1.0};
  for (std::size_t n = window.first; n <= window.last; ++n) {
    if (record.axis_cut[n] > best.value) {
      best.kick = n;
      best.value = record.axis_cut[n];
    }
  }
  return best;
}

KickWindow caustic_window(const SimParams& params, unsigned m, double lo, double hi) {
  const double center = semiclassics::mean_caustic_kicks(params.K(), params.delta(), m);
  const double first = std::ceil(lo * center);
  const double last = std::floor(hi * center);
  if (!(first <= last) || !std::isfinite(last)) {
    throw Error(ErrorKind::validation, "caustic window is empty for these parameters");
  }
  return {static_cast<std::size_t>(std::max(first, 0.0)), static_cast<std::size_t>(last)};
}

}  // namespace rotor::quantum

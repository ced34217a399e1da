#include <algorithm>
#include <cmath>
#include <string>

#include "core/fft.hpp"
#include "rotor/core.hpp"
#include "rotor/error.hpp"

namespace rotor {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::validation, std::string(name) + " must be finite");
  }
}

}  // namespace

void check_basis_size(std::size_t basis_size) {
  if (basis_size < 2 || basis_size % 2 != 0) {
    throw Error(ErrorKind::validation,
                "basis_size must be even and >= 2 (got " + std::to_string(basis_size) + ")");
  }
}

SimParams SimParams::make(double K, double delta, std::size_t basis_size,
                          std::size_t n_kicks, double g) {
  require_finite(K, "K");
  require_finite(delta, "delta");
  require_finite(g, "g");
  if (K < 0.0) throw Error(ErrorKind::validation, "K must be >= 0");
  if (delta < 0.0) throw Error(ErrorKind::validation, "delta must be >= 0");
  check_basis_size(basis_size);
  SimParams p;
  p.K_ = K;
  p.delta_ = delta;
  p.period_ = kFourPi + delta;
  p.g_ = g;
  p.basis_size_ = basis_size;
  p.n_kicks_ = n_kicks;
  return p;
}

SimParams SimParams::with_kicks(std::size_t n_kicks) const {
  SimParams p = *this;
  p.n_kicks_ = n_kicks;
  return p;
}

SimParams SimParams::with_g(double g) const {
  require_finite(g, "g");
  SimParams p = *this;
  p.g_ = g;
  return p;
}

AngleGrid::AngleGrid(std::size_t size) : size_(size) { check_basis_size(size); }

std::vector<double> AngleGrid::nodes() const {
  std::vector<double> out(size_);
  for (std::size_t j = 0; j < size_; ++j) out[j] = node(j);
  return out;
}

WaveState::WaveState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2 || amplitudes_.size() % 2 != 0) {
    throw Error(ErrorKind::size_mismatch,
                "state size must be even and >= 2 (got " + std::to_string(amplitudes_.size()) + ")");
  }
}

Complex WaveState::at_momentum(std::int64_t p) const {
  const auto half = static_cast<std::int64_t>(size() / 2);
  if (p < -half || p >= half) {
    throw Error(ErrorKind::validation, "momentum " + std::to_string(p) + " outside the basis");
  }
  return amplitudes_[bin_of_momentum(p, size())];
}

double WaveState::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& c : amplitudes_) s += std::norm(c);
  return s;
}

WaveState uniform_state(std::size_t basis_size) {
  check_basis_size(basis_size);
  std::vector<Complex> amps(basis_size, Complex{0.0, 0.0});
  amps[0] = 1.0;
  return WaveState(std::move(amps));
}

std::vector<Complex> to_angle(const WaveState& state) {
  const std::size_t M = state.size();
  detail::FftBuffer buf(M);
  auto s = buf.span();
  std::copy(state.amplitudes().begin(), state.amplitudes().end(), s.begin());
  detail::FftPlan::get(M).backward(buf);
  const double scale = 1.0 / std::sqrt(kTwoPi);
  std::vector<Complex> out(M);
  for (std::size_t j = 0; j < M; ++j) out[j] = s[j] * scale;
  return out;
}

WaveState to_momentum(std::span<const Complex> angle_values) {
  const std::size_t M = angle_values.size();
  if (M < 2 || M % 2 != 0) {
    throw Error(ErrorKind::size_mismatch,
                "angle field size must be even and >= 2 (got " + std::to_string(M) + ")");
  }
  detail::FftBuffer buf(M);
  auto s = buf.span();
  std::copy(angle_values.begin(), angle_values.end(), s.begin());
  detail::FftPlan::get(M).forward(buf);
  const double scale = std::sqrt(kTwoPi) / static_cast<double>(M);
  std::vector<Complex> amps(M);
  for (std::size_t b = 0; b < M; ++b) amps[b] = s[b] * scale;
  return WaveState(std::move(amps));
}

AmplitudeField::AmplitudeField(std::size_t grid_size, std::size_t reserve_rows)
    : grid_size_(grid_size) {
  check_basis_size(grid_size);
  values_.reserve(grid_size * reserve_rows);
}

void AmplitudeField::append_row(std::span<const double> row) {
  if (row.size() != grid_size_) throw Error(ErrorKind::size_mismatch, "field row size mismatch");
  values_.insert(values_.end(), row.begin(), row.end());
}

void AmplitudeField::append_moduli(std::span<const Complex> angle_values) {
  if (angle_values.size() != grid_size_) {
    throw Error(ErrorKind::size_mismatch, "field row size mismatch");
  }
  for (const auto& v : angle_values) values_.push_back(std::abs(v));
}

AmplitudeField AmplitudeField::from_flat(std::size_t grid_size, std::vector<double> values) {
  AmplitudeField f(grid_size);
  if (values.size() % grid_size != 0) {
    throw Error(ErrorKind::size_mismatch, "flat field length is not a multiple of the grid size");
  }
  f.values_ = std::move(values);
  return f;
}

double max_row_normalization_error(const AmplitudeField& field) {
  const double w = field.grid().spacing();
  double worst = 0.0;
  for (std::size_t r = 0; r < field.rows(); ++r) {
    double s = 0.0;
    for (double v : field.row(r)) s += v * v;
    worst = std::max(worst, std::abs(s * w - 1.0));
  }
  return worst;
}

}  // namespace rotor

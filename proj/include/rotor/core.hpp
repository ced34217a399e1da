#pragma once

// Shared parameter and state types for the near-resonant kicked rotor.
//
// Momentum layout: a state of basis size M stores amplitudes for integer
// momenta p in {-M/2, ..., M/2-1} in wrap-around (FFT bin) order, i.e. bin b
// holds p = b for b < M/2 and p = b - M otherwise.
//
// Angle-space values carry the continuum density convention
// <theta|p> = e^{i p theta} / sqrt(2 pi), so the uniform state has
// |psi(theta)| = 1/sqrt(2 pi) and sum_j |psi_j|^2 (2 pi / M) = 1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace rotor {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;
/// |psi(theta)| of the uniform plane wave.
inline const double kUniformAmplitude = 1.0 / std::sqrt(kTwoPi);

inline constexpr std::size_t kDefaultBasisSize = 2048;

/// Validated control parameters of one run. Immutable after construction.
class SimParams {
 public:
  /// Throws Error(validation) on odd or non-positive basis size, negative
  /// K or delta, or non-finite inputs. n_kicks is unsigned by type; the C API
  /// and the config layer reject negative counts before getting here.
  static SimParams make(double K, double delta, std::size_t basis_size,
                        std::size_t n_kicks, double g = 0.0);

  double K() const noexcept { return K_; }
  double delta() const noexcept { return delta_; }
  /// Kicking period 4 pi + delta.
  double period() const noexcept { return period_; }
  double g() const noexcept { return g_; }
  std::size_t basis_size() const noexcept { return basis_size_; }
  std::size_t n_kicks() const noexcept { return n_kicks_; }

  SimParams with_kicks(std::size_t n_kicks) const;
  SimParams with_g(double g) const;

 private:
  SimParams() = default;

  double K_ = 0.0;
  double delta_ = 0.0;
  double period_ = kFourPi;
  double g_ = 0.0;
  std::size_t basis_size_ = 2;
  std::size_t n_kicks_ = 0;
};

/// make_params with the argument order used throughout the docs.
inline SimParams make_params(double K, double delta, std::size_t basis_size,
                             std::size_t n_kicks, double g = 0.0) {
  return SimParams::make(K, delta, basis_size, n_kicks, g);
}

/// Throws Error(validation) unless basis_size is even and >= 2.
void check_basis_size(std::size_t basis_size);

/// Uniform angle grid theta_j = 2 pi j / M, j = 0..M-1.
class AngleGrid {
 public:
  explicit AngleGrid(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(size_); }
  double node(std::size_t j) const noexcept {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(size_);
  }
  std::vector<double> nodes() const;
  /// Node closest to pi (exactly M/2 for even M).
  std::size_t axis_node() const noexcept { return size_ / 2; }

 private:
  std::size_t size_;
};

/// Integer momentum held by FFT bin b of an M-sized basis.
constexpr std::int64_t momentum_of_bin(std::size_t bin, std::size_t M) noexcept {
  return bin < M / 2 ? static_cast<std::int64_t>(bin)
                     : static_cast<std::int64_t>(bin) - static_cast<std::int64_t>(M);
}

/// Inverse of momentum_of_bin for p in {-M/2, ..., M/2-1}.
constexpr std::size_t bin_of_momentum(std::int64_t p, std::size_t M) noexcept {
  return p >= 0 ? static_cast<std::size_t>(p)
                : static_cast<std::size_t>(p + static_cast<std::int64_t>(M));
}

/// Momentum-basis quantum state.
class WaveState {
 public:
  /// Takes amplitudes in wrap-around order. Throws on odd or too-small size.
  explicit WaveState(std::vector<Complex> amplitudes);

  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }

  /// Amplitude of integer momentum p, |p| within the basis.
  Complex at_momentum(std::int64_t p) const;

  double norm_squared() const noexcept;

 private:
  std::vector<Complex> amplitudes_;
};

/// The uniform plane wave psi(theta) = 1/sqrt(2 pi): c_0 = 1.
WaveState uniform_state(std::size_t basis_size);

/// Angle-space values psi(theta_j) under the continuum density convention.
std::vector<Complex> to_angle(const WaveState& state);

/// Inverse of to_angle. Throws Error(size_mismatch) for odd or tiny sizes.
WaveState to_momentum(std::span<const Complex> angle_values);

/// |psi(theta_j, t_n)| for kicks n = 0..rows-1, row-major.
class AmplitudeField {
 public:
  AmplitudeField(std::size_t grid_size, std::size_t reserve_rows = 0);

  std::size_t rows() const noexcept { return grid_size_ == 0 ? 0 : values_.size() / grid_size_; }
  std::size_t cols() const noexcept { return grid_size_; }
  AngleGrid grid() const { return AngleGrid(grid_size_); }

  double at(std::size_t row, std::size_t col) const { return values_[row * grid_size_ + col]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * grid_size_, grid_size_};
  }
  std::span<const double> data() const noexcept { return values_; }

  void append_row(std::span<const double> row);
  /// Appends |psi(theta_j)| of the given angle-space values.
  void append_moduli(std::span<const Complex> angle_values);

  /// Rebuilds a field from flat row-major data (used by readers).
  static AmplitudeField from_flat(std::size_t grid_size, std::vector<double> values);

 private:
  std::size_t grid_size_;
  std::vector<double> values_;
};

/// max_j |sum_j value^2 * (2 pi / M) - 1| over all rows.
double max_row_normalization_error(const AmplitudeField& field);

}  // namespace rotor

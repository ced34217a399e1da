#pragma once

// Amplitude scaling at the first cusp: lambda = -(pi/48) sqrt(K/delta),
// |psi| ~ |lambda|^{1/4} ~ (K/delta)^{1/8}.

#include <cstddef>
#include <span>

#include "rotor/core.hpp"

namespace rotor::scaling {

/// Prefactor of the published comparison curve 2 |lambda|^{1/4}.
inline constexpr double kCuspPrefactor = 2.0;

struct ScalingRecord {
  double K = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double measured = 0.0;
  double predicted = 0.0;
  std::size_t peak_kick = 0;
  double peak_theta = 0.0;
};

struct ArnoldFit {
  double exponent = 0.0;   ///< slope of log(measured) against log(K/delta)
  double intercept = 0.0;  ///< log(measured) at K/delta = 1
  double residual = 0.0;   ///< RMS of the log residuals
};

struct CuspIntegral {
  Complex value;
  std::size_t intervals = 0;     ///< trapezoid intervals of the accepted value
  double relative_change = 0.0;  ///< change against the previous halving
};

double lambda_param(double K, double delta);

double predicted_cusp_amplitude(double K, double delta, double prefactor = kCuspPrefactor);

/// Evolves the uniform state for floor(1.5 n0) kicks (n0 the m = 0 mean
/// caustic time) and takes the field maximum over kicks [0.5, 1.5] n0.
/// Requires g = 0 and n0 >= 5. Tail-mass violations propagate.
ScalingRecord measure_cusp_amplitude(const SimParams& params,
                                     double prefactor = kCuspPrefactor);

/// Least-squares fit over >= 3 records spanning at least a decade in K/delta.
ArnoldFit fit_arnold_index(std::span<const ScalingRecord> records);

/// Prefactor c minimizing sum (log measured - log(c |lambda|^{1/4}))^2.
double refit_prefactor(std::span<const ScalingRecord> records);

/// Unnormalized integral over delta0 in [-pi, pi] of
///   exp{i[(2K/delta) t cos(a) - (K/delta) t cos(delta0) - K sin(a) (a - delta0)]}
/// with a = delta_angle, by the trapezoid rule starting from quad_points
/// intervals and doubling until two successive values agree to 1e-4
/// relative. Throws Error(non_convergence) after 16 doublings.
CuspIntegral cusp_integral(double delta_angle, double t, double K, double delta,
                           std::size_t quad_points = 4096);

}  // namespace rotor::scaling

#pragma once

// Semiclassical description of the near-resonant rotor: the pendulum limit
// theta'' = (K/delta) sin theta of the epsilon-classical map, its caustics,
// and the tangent / Gelfand-Yaglom linearizations along it.
//
// Time convention: continuous time t relates to kick count n by t = n delta.
// A map trajectory started with zero momentum has its turning point half a
// kick after the start, so the n-th iterate samples the pendulum at
// t = (n - 1/2) delta (see map_sample_time).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rotor::semiclassics {

/// A point on a caustic curve.
struct CausticPrediction {
  unsigned m = 0;               ///< branch index
  double time = 0.0;            ///< continuous time t
  std::int64_t kick_index = 0;  ///< round(t / delta)
  double theta = 0.0;           ///< caustic angle
  double k = 0.0;               ///< modulus sin((theta0 - pi)/2)
};

struct CausticCurve {
  std::vector<CausticPrediction> points;  ///< sorted by theta
  std::vector<std::string> skipped;       ///< one message per failed k
};

/// Time bracket [lo, hi] for the caustic root search.
struct TimeBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Modulus k = sin((theta0 - pi)/2) of the trajectory released at theta0.
double modulus_for_theta0(double theta0);

/// Continuous time sampled by the n-th iterate of a zero-momentum map run.
inline double map_sample_time(std::size_t n, double delta) {
  return (static_cast<double>(n) - 0.5) * delta;
}

/// Kick whose iterate samples continuous time t (inverse of map_sample_time).
std::int64_t kick_for_time(double t, double delta);

/// theta(t) = pi + 2 asin(k cn(u, k) / dn(u, k)), u = t sqrt(K/delta).
/// Throws Error(separatrix) for theta0 on the separatrix (0 or 2 pi) and
/// Error(validation) for theta0 outside [0, 2 pi], t < 0, K <= 0, delta <= 0.
double pendulum_solution(double theta0, double t, double K, double delta);

/// S = sum_j [(theta_{j+1} - theta_j)^2 / (2 delta) - K cos theta_{j+1}].
double discrete_action(std::span<const double> path, double K, double delta);

/// (2m+1) K(|k|) / sqrt(K delta), in kicks.
double caustic_time_for_k(double k, double K, double delta, unsigned m);

/// (2m+1) pi / (2 sqrt(K delta)): the k -> 0 estimate for a uniform start.
double mean_caustic_kicks(double K, double delta, unsigned m);

/// Left side of the caustic equation, cd + k d(cd)/dk at fixed u = t sqrt(K/delta),
/// with the k-derivative by central difference (step 1e-6, kept inside |k| < 1).
double caustic_residual(double t, double k, double K, double delta);

/// Root in t of the caustic equation for branch m by bisection to relative
/// tolerance 1e-10. The default bracket is u in [(2m+1) K(k), (2m+2) K(k)]:
/// the residual has opposite signs at the two ends for every 0 < |k| < 1 in
/// exact arithmetic. Throws Error(no_root) when the bracket shows no sign
/// change and Error(separatrix) for |k| >= 1.
double solve_caustic_equation(double k, double K, double delta, unsigned m,
                              std::optional<TimeBracket> bracket = std::nullopt);

/// Caustic curve of branch m over k_grid (|k| < 1, k != 0). The k = 0 cusp
/// point (pi, mean_caustic_kicks) is added analytically. Solver failures are
/// skipped and reported in CausticCurve::skipped.
CausticCurve caustic_curve(double K, double delta, unsigned m, std::span<const double> k_grid);

/// v(t) = d theta(t) / d theta0 from v'' = (K/delta) cos(theta(t)) v,
/// v(0) = 1, v'(0) = 0 (adaptive Dormand-Prince, rel. tol 1e-10).
double variational_derivative(double theta0, double t, double K, double delta);

/// Gelfand-Yaglom solution u'' = (K/delta) cos(theta(t)) u, u(0) = 0, u'(0) = 1.
double gelfand_yaglom(double theta0, double t, double K, double delta);

enum class TangentKind { variational, gelfand_yaglom };

/// Zeros of the chosen tangent solution in (0, t_max], at most max_count,
/// located by bisection on the dense-output interpolant.
std::vector<double> tangent_zero_times(TangentKind kind, double theta0, double t_max,
                                       double K, double delta, std::size_t max_count = 64);

}  // namespace rotor::semiclassics

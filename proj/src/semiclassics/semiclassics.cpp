#include "rotor/semiclassics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "core/text.hpp"
#include "rotor/core.hpp"
#include "rotor/elliptic.hpp"
#include "rotor/error.hpp"

namespace rotor::semiclassics {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kDerivativeStep = 1e-6;
constexpr double kRootTolerance = 1e-10;
constexpr double kOdeRelTol = 1e-10;
constexpr double kOdeAbsTol = 1e-14;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::validation, std::string(name) + " must be finite and > 0");
  }
}

void require_rates(double K, double delta) {
  require_positive(K, "K");
  require_positive(delta, "delta");
}

void require_theta0(double theta0) {
  if (!std::isfinite(theta0) || theta0 < 0.0 || theta0 > kTwoPi) {
    throw Error(ErrorKind::validation, "theta0 must lie in (0, 2 pi)");
  }
  if (theta0 == 0.0 || theta0 == kTwoPi) {
    throw Error(ErrorKind::separatrix, "theta0 on the separatrix (k = +-1)");
  }
}

void require_sub_separatrix(double k) {
  if (!std::isfinite(k)) throw Error(ErrorKind::validation, "modulus must be finite");
  if (std::abs(k) >= 1.0) throw Error(ErrorKind::separatrix, "|k| >= 1 lies on the separatrix");
}

using OdeState = std::array<double, 2>;

// Tangent equation in scaled time s = t sqrt(K/delta):
//   x'' = cos(theta(s)) x, cos(theta) = 2 y^2 - 1 with y = k cd(s, k).
struct TangentRhs {
  double k;
  void operator()(const OdeState& x, OdeState& dxds, double s) const {
    const double y = k * elliptic::cd(s, k);
    dxds[0] = x[1];
    dxds[1] = (2.0 * y * y - 1.0) * x[0];
  }
};

OdeState initial_tangent_state(TangentKind kind) {
  return kind == TangentKind::variational ? OdeState{1.0, 0.0} : OdeState{0.0, 1.0};
}

double integrate_tangent(TangentKind kind, double theta0, double t, double K, double delta) {
  require_theta0(theta0);
  require_rates(K, delta);
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::validation, "t must be >= 0");
  const double omega = std::sqrt(K / delta);
  const double s_end = t * omega;
  OdeState x = initial_tangent_state(kind);
  if (s_end > 0.0) {
    odeint::integrate_adaptive(
        odeint::make_controlled(kOdeAbsTol, kOdeRelTol, odeint::runge_kutta_dopri5<OdeState>()),
        TangentRhs{modulus_for_theta0(theta0)}, x, 0.0, s_end, std::min(0.01, s_end));
  }
  // Gelfand-Yaglom u(t) carries the 1/omega of u'(0) = 1 in real time.
  return kind == TangentKind::variational ? x[0] : x[0] / omega;
}

}  // namespace

double modulus_for_theta0(double theta0) { return std::sin(0.5 * (theta0 - std::numbers::pi)); }

std::int64_t kick_for_time(double t, double delta) {
  require_positive(delta, "delta");
  return static_cast<std::int64_t>(std::llround(t / delta + 0.5));
}

double pendulum_solution(double theta0, double t, double K, double delta) {
  require_theta0(theta0);
  require_rates(K, delta);
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::validation, "t must be >= 0");
  const double k = modulus_for_theta0(theta0);
  const double u = t * std::sqrt(K / delta);
  return std::numbers::pi + 2.0 * std::asin(std::clamp(k * elliptic::cd(u, k), -1.0, 1.0));
}

double discrete_action(std::span<const double> path, double K, double delta) {
  if (path.size() < 2) throw Error(ErrorKind::validation, "path needs at least two angles");
  require_positive(delta, "delta");
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    const double step = path[j + 1] - path[j];
    s += step * step / (2.0 * delta) - K * std::cos(path[j + 1]);
  }
  return s;
}

double caustic_time_for_k(double k, double K, double delta, unsigned m) {
  require_sub_separatrix(k);
  require_rates(K, delta);
  return (2.0 * m + 1.0) * elliptic::complete_K(std::abs(k)) / std::sqrt(K * delta);
}

double mean_caustic_kicks(double K, double delta, unsigned m) {
  require_rates(K, delta);
  return (2.0 * m + 1.0) * std::numbers::pi / (2.0 * std::sqrt(K * delta));
}

double caustic_residual(double t, double k, double K, double delta) {
  require_sub_separatrix(k);
  require_rates(K, delta);
  const double u = t * std::sqrt(K / delta);
  const double h = std::min(kDerivativeStep, 0.5 * (1.0 - std::abs(k)));
  const double dcd = (elliptic::cd(u, k + h) - elliptic::cd(u, k - h)) / (2.0 * h);
  return elliptic::cd(u, k) + k * dcd;
}

double solve_caustic_equation(double k, double K, double delta, unsigned m,
                              std::optional<TimeBracket> bracket) {
  require_sub_separatrix(k);
  require_rates(K, delta);
  if (k == 0.0) {
    throw Error(ErrorKind::validation, "caustic equation needs k != 0; k = 0 is the cusp point");
  }
  if (!bracket) {
    const double quarter = elliptic::complete_K(std::abs(k)) / std::sqrt(K / delta);
    bracket = TimeBracket{(2.0 * m + 1.0) * quarter, (2.0 * m + 2.0) * quarter};
  }
  double lo = bracket->lo;
  double hi = bracket->hi;
  double f_lo = caustic_residual(lo, k, K, delta);
  const double f_hi = caustic_residual(hi, k, K, delta);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    throw Error(ErrorKind::no_root, "caustic equation has no sign change in [" +
                                        format_double(lo) + ", " + format_double(hi) +
                                        "] for k = " + format_double(k));
  }
  for (int it = 0; it < 200 && (hi - lo) > kRootTolerance * std::abs(0.5 * (lo + hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = caustic_residual(mid, k, K, delta);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CausticCurve caustic_curve(double K, double delta, unsigned m, std::span<const double> k_grid) {
  require_rates(K, delta);
  CausticCurve curve;
  const double cusp_time = mean_caustic_kicks(K, delta, m) * delta;
  curve.points.push_back(
      {m, cusp_time, std::llround(cusp_time / delta), std::numbers::pi, 0.0});
  for (const double k : k_grid) {
    try {
      if (k == 0.0) throw Error(ErrorKind::validation, "k = 0 is covered by the cusp point");
      const double t = solve_caustic_equation(k, K, delta, m);
      const double theta0 = std::numbers::pi + 2.0 * std::asin(k);
      const double theta = pendulum_solution(theta0, t, K, delta);
      curve.points.push_back({m, t, std::llround(t / delta), theta, k});
    } catch (const Error& e) {
      curve.skipped.push_back("k = " + format_double(k) + ": " + e.what());
    }
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const auto& a, const auto& b) { return a.theta < b.theta; });
  return curve;
}

double variational_derivative(double theta0, double t, double K, double delta) {
  return integrate_tangent(TangentKind::variational, theta0, t, K, delta);
}

double gelfand_yaglom(double theta0, double t, double K, double delta) {
  return integrate_tangent(TangentKind::gelfand_yaglom, theta0, t, K, delta);
}

std::vector<double> tangent_zero_times(TangentKind kind, double theta0, double t_max, double K,
                                       double delta, std::size_t max_count) {
  require_theta0(theta0);
  require_rates(K, delta);
  const double omega = std::sqrt(K / delta);
  const double s_max = t_max * omega;
  std::vector<double> zeros;
  if (!(s_max > 0.0)) return zeros;

  auto stepper =
      odeint::make_dense_output(kOdeAbsTol, kOdeRelTol, odeint::runge_kutta_dopri5<OdeState>());
  const TangentRhs rhs{modulus_for_theta0(theta0)};
  stepper.initialize(initial_tangent_state(kind), 0.0, 0.01);
  while (stepper.current_time() < s_max && zeros.size() < max_count) {
    stepper.do_step(rhs);
    const double a_val = stepper.previous_state()[0];
    const double b_val = stepper.current_state()[0];
    if (!(a_val * b_val < 0.0)) continue;
    double lo = stepper.previous_time();
    double hi = stepper.current_time();
    OdeState probe;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      stepper.calc_state(mid, probe);
      if ((probe[0] > 0.0) == (a_val > 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double s_zero = 0.5 * (lo + hi);
    if (s_zero <= s_max) zeros.push_back(s_zero / omega);
  }
  return zeros;
}

}  // namespace rotor::semiclassics

#include "rotor/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/text.hpp"
#include "rotor/error.hpp"
#include "rotor/quantum.hpp"
#include "rotor/semiclassics.hpp"

namespace rotor::scaling {

namespace {

void require_rates(double K, double delta) {
  if (!(K > 0.0) || !(delta > 0.0) || !std::isfinite(K) || !std::isfinite(delta)) {
    throw Error(ErrorKind::validation, "K and delta must be finite and > 0");
  }
}

Complex trapezoid(double a, double t, double K, double delta, std::size_t intervals) {
  const double x = K / delta * t;
  const double fixed = 2.0 * x * std::cos(a);
  const double slope = K * std::sin(a);
  const double h = kTwoPi / static_cast<double>(intervals);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double d0 = -std::numbers::pi + h * static_cast<double>(i);
    const double phase = fixed - x * std::cos(d0) - slope * (a - d0);
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    sum += w * std::polar(1.0, phase);
  }
  return sum * h;
}

}  // namespace

double lambda_param(double K, double delta) {
  require_rates(K, delta);
  return -(std::numbers::pi / 48.0) * std::sqrt(K / delta);
}

double predicted_cusp_amplitude(double K, double delta, double prefactor) {
  return prefactor * std::pow(std::abs(lambda_param(K, delta)), 0.25);
}

ScalingRecord measure_cusp_amplitude(const SimParams& params, double prefactor) {
  require_rates(params.K(), params.delta());
  if (params.g() != 0.0) throw Error(ErrorKind::validation, "cusp amplitude scan requires g = 0");
  const double n0 = semiclassics::mean_caustic_kicks(params.K(), params.delta(), 0);
  if (n0 < 5.0) {
    throw Error(ErrorKind::validation,
                "first caustic at " + format_double(n0) + " kicks; need >= 5 (reduce K delta)");
  }
  const auto run_params = params.with_kicks(static_cast<std::size_t>(std::floor(1.5 * n0)));
  const auto rec = quantum::evolve(uniform_state(run_params.basis_size()), run_params);
  const auto peak = quantum::peak_amplitude(rec, quantum::first_cusp_window(run_params));
  return {params.K(),
          params.delta(),
          lambda_param(params.K(), params.delta()),
          peak.value,
          predicted_cusp_amplitude(params.K(), params.delta(), prefactor),
          peak.kick,
          peak.theta};
}

ArnoldFit fit_arnold_index(std::span<const ScalingRecord> records) {
  if (records.size() < 3) throw Error(ErrorKind::validation, "fit needs at least 3 records");
  double lo = INFINITY;
  double hi = 0.0;
  for (const auto& r : records) {
    require_rates(r.K, r.delta);
    if (!(r.measured > 0.0)) throw Error(ErrorKind::validation, "measured amplitude must be > 0");
    lo = std::min(lo, r.K / r.delta);
    hi = std::max(hi, r.K / r.delta);
  }
  if (hi < 10.0 * lo) {
    throw Error(ErrorKind::validation, "records must span at least a decade in K/delta");
  }
  const auto n = static_cast<double>(records.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : records) {
    mx += std::log(r.K / r.delta);
    my += std::log(r.measured);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& r : records) {
    const double dx = std::log(r.K / r.delta) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.measured) - my);
  }
  ArnoldFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (const auto& r : records) {
    const double e =
        std::log(r.measured) - (fit.intercept + fit.exponent * std::log(r.K / r.delta));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double refit_prefactor(std::span<const ScalingRecord> records) {
  if (records.empty()) throw Error(ErrorKind::validation, "refit needs at least one record");
  double s = 0.0;
  for (const auto& r : records) {
    s += std::log(r.measured) - 0.25 * std::log(std::abs(lambda_param(r.K, r.delta)));
  }
  return std::exp(s / static_cast<double>(records.size()));
}

CuspIntegral cusp_integral(double delta_angle, double t, double K, double delta,
                           std::size_t quad_points) {
  require_rates(K, delta);
  if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(delta_angle)) {
    throw Error(ErrorKind::validation, "cusp integral needs finite delta_angle and t > 0");
  }
  if (quad_points < 1000) throw Error(ErrorKind::validation, "quad_points must be >= 1000");
  std::size_t n = quad_points;
  Complex prev = trapezoid(delta_angle, t, K, delta, n);
  double change = INFINITY;
  for (int doubling = 0; doubling < 16; ++doubling) {
    n *= 2;
    const Complex next = trapezoid(delta_angle, t, K, delta, n);
    change = std::abs(next - prev) / std::max(std::abs(next), 1e-300);
    prev = next;
    if (change <= 1e-4) return {next, n, change};
  }
  throw Error(ErrorKind::non_convergence,
              "cusp integral did not converge (relative change " + format_double(change) + ")");
}

}  // namespace rotor::scaling

#include "rotor/classical.hpp"

#include <algorithm>
#include <cmath>

#include "rotor/error.hpp"

namespace rotor::classical {

namespace {

void require_finite_point(PhasePoint point, double a, double b) {
  if (!std::isfinite(point.theta) || !std::isfinite(point.p) || !std::isfinite(a) ||
      !std::isfinite(b)) {
    throw Error(ErrorKind::validation, "map inputs must be finite");
  }
}

// Signed angular difference folded into [-pi, pi].
double angle_difference(double to, double from) { return std::remainder(to - from, kTwoPi); }

}  // namespace

MapKind parse_map_kind(const std::string& name) {
  if (name == "standard") return MapKind::standard;
  if (name == "eps_classical") return MapKind::eps_classical;
  throw Error(ErrorKind::validation, "unknown map kind '" + name + "'");
}

const char* to_string(MapKind kind) noexcept {
  return kind == MapKind::standard ? "standard" : "eps_classical";
}

double wrap_angle(double theta) noexcept {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

PhasePoint standard_map_step(PhasePoint point, double K, double T) {
  require_finite_point(point, K, T);
  const double theta = wrap_angle(point.theta + point.p * T);
  return {theta, point.p + K * std::sin(theta)};
}

PhasePoint eps_classical_step(PhasePoint point, double K, double delta) {
  require_finite_point(point, K, delta);
  const double theta = wrap_angle(point.theta + point.p);
  return {theta, point.p + K * delta * std::sin(theta)};
}

PhasePoint map_step(PhasePoint point, MapKind kind, const SimParams& params) {
  return kind == MapKind::standard ? standard_map_step(point, params.K(), params.period())
                                   : eps_classical_step(point, params.K(), params.delta());
}

ClassicalEnsemble ClassicalEnsemble::uniform(std::size_t count, double p0, double theta_lo,
                                             double theta_hi) {
  ClassicalEnsemble e;
  e.provenance = {count, p0, theta_lo, theta_hi};
  e.points.reserve(count);
  const double width = (theta_hi - theta_lo) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    e.points.push_back({wrap_angle(theta_lo + (static_cast<double>(i) + 0.5) * width), p0});
  }
  return e;
}

std::vector<ClassicalEnsemble> propagate(const ClassicalEnsemble& ensemble, MapKind kind,
                                         const SimParams& params, std::size_t n_steps) {
  std::vector<ClassicalEnsemble> snaps;
  snaps.reserve(n_steps + 1);
  snaps.push_back(ensemble);
  for (std::size_t n = 0; n < n_steps; ++n) {
    ClassicalEnsemble next = snaps.back();
    for (auto& pt : next.points) pt = map_step(pt, kind, params);
    snaps.push_back(std::move(next));
  }
  return snaps;
}

std::vector<FoldPoint> fold_detect(std::span<const double> theta0_grid, MapKind kind,
                                   const SimParams& params, std::size_t n_steps, double p0) {
  const std::size_t N = theta0_grid.size();
  if (N < 3) throw Error(ErrorKind::validation, "fold detection needs at least 3 grid points");
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (!(theta0_grid[i + 1] > theta0_grid[i])) {
      throw Error(ErrorKind::validation, "theta0 grid must be strictly increasing");
    }
  }
  std::vector<PhasePoint> pts(N);
  for (std::size_t i = 0; i < N; ++i) pts[i] = {wrap_angle(theta0_grid[i]), p0};

  std::vector<FoldPoint> folds;
  std::vector<double> deriv(N);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    for (auto& pt : pts) pt = map_step(pt, kind, params);
    // Central differences on interior points; unwrap across the 0/2pi cut.
    for (std::size_t i = 1; i + 1 < N; ++i) {
      deriv[i] = angle_difference(pts[i + 1].theta, pts[i - 1].theta) /
                 (theta0_grid[i + 1] - theta0_grid[i - 1]);
    }
    for (std::size_t i = 1; i + 2 < N; ++i) {
      if (deriv[i] * deriv[i + 1] < 0.0) {
        const double mid =
            wrap_angle(pts[i].theta + 0.5 * angle_difference(pts[i + 1].theta, pts[i].theta));
        folds.push_back({n, mid, 0.5 * (theta0_grid[i] + theta0_grid[i + 1])});
      }
    }
  }
  return folds;
}

std::vector<PhasePoint> poincare_section(const SimParams& params, MapKind kind,
                                         std::span<const PhasePoint> seeds, std::size_t n_steps) {
  std::vector<PhasePoint> cloud;
  cloud.reserve(seeds.size() * (n_steps + 1));
  for (const auto& seed : seeds) {
    PhasePoint pt{wrap_angle(seed.theta), seed.p};
    cloud.push_back(pt);
    for (std::size_t n = 0; n < n_steps; ++n) {
      pt = map_step(pt, kind, params);
      cloud.push_back(pt);
    }
  }
  return cloud;
}

std::vector<double> momentum_excursions(const SimParams& params, MapKind kind,
                                        std::span<const PhasePoint> seeds, std::size_t n_steps) {
  std::vector<double> out;
  out.reserve(seeds.size());
  for (const auto& seed : seeds) {
    PhasePoint pt = seed;
    double worst = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      pt = map_step(pt, kind, params);
      worst = std::max(worst, std::abs(pt.p - seed.p));
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace rotor::classical

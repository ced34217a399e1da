#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotor/classical.hpp"
#include "rotor/elliptic.hpp"
#include "rotor/semiclassics.hpp"
#include "test_util.hpp"

using namespace rotor;
using namespace rotor::semiclassics;

namespace {
constexpr double kK = 5.0;
constexpr double kDelta = 1e-4;
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_SUITE("semiclassics") {

TEST_CASE("modulus of the release angle") {
  CHECK(modulus_for_theta0(kPi) == 0.0);
  CHECK(modulus_for_theta0(kPi + 2 * std::asin(0.3)) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(modulus_for_theta0(0.0) == doctest::Approx(-1.0));
}

TEST_CASE("pendulum solution solves the pendulum equation") {
  for (double theta0 : {0.5, 2.0, 3.0, 4.4, 6.0}) {
    CHECK(pendulum_solution(theta0, 0.0, kK, kDelta) == doctest::Approx(theta0).epsilon(1e-13));
    const double h = 1e-6;
    CHECK(std::abs(pendulum_solution(theta0, h, kK, kDelta) - theta0) < 1e-6);
    for (double t : {0.003, 0.011, 0.024}) {
      const double f0 = pendulum_solution(theta0, t, kK, kDelta);
      const double fp = pendulum_solution(theta0, t + h, kK, kDelta);
      const double fm = pendulum_solution(theta0, t - h, kK, kDelta);
      const double acc = (fp - 2 * f0 + fm) / (h * h);
      CHECK(acc == doctest::Approx(kK / kDelta * std::sin(f0)).epsilon(2e-3).scale(1.0));
    }
    // Full oscillation period 4 K(k) / omega.
    const double k = modulus_for_theta0(theta0);
    const double T = 4.0 * elliptic::complete_K(k) / std::sqrt(kK / kDelta);
    CHECK(pendulum_solution(theta0, T, kK, kDelta) == doctest::Approx(theta0).epsilon(1e-9));
  }
}

TEST_CASE("pendulum errors") {
  CHECK(kind_of([] { pendulum_solution(0.0, 0.1, kK, kDelta); }) == ErrorKind::separatrix);
  CHECK(kind_of([] { pendulum_solution(kTwoPi, 0.1, kK, kDelta); }) == ErrorKind::separatrix);
  CHECK(kind_of([] { pendulum_solution(-0.5, 0.1, kK, kDelta); }) == ErrorKind::validation);
  CHECK(kind_of([] { pendulum_solution(1.0, -0.1, kK, kDelta); }) == ErrorKind::validation);
  CHECK(kind_of([] { pendulum_solution(1.0, 0.1, 0.0, kDelta); }) == ErrorKind::validation);
}

TEST_CASE("staggered sampling of the epsilon-classical map") {
  CHECK(map_sample_time(1, 2.0) == 1.0);
  for (std::size_t n : {1u, 2u, 70u, 301u}) CHECK(kick_for_time(map_sample_time(n, kDelta), kDelta) == n);
  double worst = 0.0;
  for (double theta0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    classical::PhasePoint pt{theta0, 0.0};
    for (std::size_t n = 1; n <= 300; ++n) {
      pt = classical::eps_classical_step(pt, kK, kDelta);
      const double ref = pendulum_solution(theta0, map_sample_time(n, kDelta), kK, kDelta);
      worst = std::max(worst, std::abs(std::remainder(pt.theta - ref, kTwoPi)));
    }
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("literal-time check of the example trajectory") {
  // theta0 = 2, t = 0.5: floor(t / delta) iterates against the pendulum at t.
  classical::PhasePoint pt{2.0, 0.0};
  for (int n = 0; n < 5000; ++n) pt = classical::eps_classical_step(pt, kK, kDelta);
  CHECK(std::abs(pt.theta - pendulum_solution(2.0, 0.5, kK, kDelta)) < 0.01);
}

TEST_CASE("discrete action") {
  const std::vector<double> path{0.0, 0.1, 0.3};
  const double expect = (0.01 + 0.04) / (2 * 0.5) - 2.0 * (std::cos(0.1) + std::cos(0.3));
  CHECK(discrete_action(path, 2.0, 0.5) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(kind_of([] { discrete_action(std::vector<double>{1.0}, 2.0, 0.5); }) ==
        ErrorKind::validation);
}

TEST_CASE("caustic times") {
  CHECK(mean_caustic_kicks(kK, kDelta, 0) == doctest::Approx(70.24814731040726).epsilon(1e-14));
  CHECK(mean_caustic_kicks(kK, kDelta, 1) == doctest::Approx(210.7444419312218).epsilon(1e-14));
  CHECK(caustic_time_for_k(0.0, kK, kDelta, 0) == doctest::Approx(mean_caustic_kicks(kK, kDelta, 0)));
  CHECK(caustic_time_for_k(-0.5, kK, kDelta, 2) == caustic_time_for_k(0.5, kK, kDelta, 2));
  CHECK(caustic_time_for_k(0.5, kK, kDelta, 0) > caustic_time_for_k(0.1, kK, kDelta, 0));
  CHECK(kind_of([] { caustic_time_for_k(1.0, kK, kDelta, 0); }) == ErrorKind::separatrix);
}

TEST_CASE("caustic root is a zero of the variational derivative") {
  for (double k : {0.05, 0.2, 0.5, -0.5, 0.8, 0.95}) {
    for (unsigned m : {0u, 1u}) {
      const double t = solve_caustic_equation(k, kK, kDelta, m);
      const double theta0 = kPi + 2.0 * std::asin(k);
      const auto zeros = tangent_zero_times(TangentKind::variational, theta0, 1.2 * t, kK, kDelta);
      REQUIRE(zeros.size() >= m + 1);
      CHECK(t == doctest::Approx(zeros[m]).epsilon(1e-7));
    }
  }
  // Frozen from an independent quadrature root search.
  CHECK(solve_caustic_equation(0.5, kK, kDelta, 0) / kDelta == doctest::Approx(87.2196).epsilon(1e-5));
  CHECK(solve_caustic_equation(0.9, kK, kDelta, 0) / kDelta == doctest::Approx(170.327).epsilon(1e-5));
  CHECK(solve_caustic_equation(1e-4, kK, kDelta, 0) / kDelta ==
        doctest::Approx(70.248).epsilon(1e-4));
}

TEST_CASE("caustic solver errors") {
  CHECK(kind_of([] { solve_caustic_equation(0.0, kK, kDelta, 0); }) == ErrorKind::validation);
  CHECK(kind_of([] { solve_caustic_equation(1.0, kK, kDelta, 0); }) == ErrorKind::separatrix);
  // Above the modulus cap the k-derivative vanishes and the residual keeps its sign.
  CHECK(kind_of([] { solve_caustic_equation(std::nextafter(1.0, 0.0), kK, kDelta, 0); }) ==
        ErrorKind::no_root);
  CHECK(kind_of([] { solve_caustic_equation(0.5, kK, kDelta, 0, TimeBracket{0.001, 0.002}); }) ==
        ErrorKind::no_root);
}

TEST_CASE("caustic curve") {
  std::vector<double> grid{-0.6, -0.3, 0.0, 0.3, 0.6, 1.0};
  const auto curve = caustic_curve(kK, kDelta, 0, grid);
  REQUIRE(curve.points.size() == 5);  // cusp + four moduli
  CHECK(curve.skipped.size() == 2);
  CHECK(std::is_sorted(curve.points.begin(), curve.points.end(),
                       [](auto& a, auto& b) { return a.theta < b.theta; }));
  const auto& cusp = curve.points[2];
  CHECK(cusp.k == 0.0);
  CHECK(cusp.theta == kPi);
  CHECK(cusp.kick_index == 70);
  // Mirror symmetry k -> -k.
  CHECK(curve.points[0].theta == doctest::Approx(kTwoPi - curve.points[4].theta).epsilon(1e-12));
  CHECK(curve.points[0].time == doctest::Approx(curve.points[4].time).epsilon(1e-12));
  CHECK(curve.points[4].kick_index == std::llround(curve.points[4].time / kDelta));
}

TEST_CASE("tangent solutions in the harmonic limit") {
  const double theta0 = kPi + 1e-6;
  const double w = std::sqrt(kK / kDelta);
  for (double t : {0.001, 0.004, 0.01, 0.03}) {
    const double u = gelfand_yaglom(theta0, t, kK, kDelta);
    CHECK(u == doctest::Approx(std::sin(w * t) / w).epsilon(1e-6));
    CHECK(variational_derivative(theta0, t, kK, kDelta) ==
          doctest::Approx(std::cos(w * t)).epsilon(1e-6).scale(1.0));
  }
  const auto zeros = tangent_zero_times(TangentKind::variational, theta0, 0.05, kK, kDelta);
  REQUIRE(zeros.size() >= 3);
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(zeros[m] / kDelta == doctest::Approx(mean_caustic_kicks(kK, kDelta, m)).epsilon(1e-6));
  }
}

TEST_CASE("Sturm interlacing of the two tangent solutions") {
  for (double theta0 : {1.0, 2.5, 3.5, 5.2}) {
    const auto v = tangent_zero_times(TangentKind::variational, theta0, 0.06, kK, kDelta);
    const auto u = tangent_zero_times(TangentKind::gelfand_yaglom, theta0, 0.06, kK, kDelta);
    REQUIRE(v.size() >= 2);
    REQUIRE(u.size() >= 2);
    // u(0) = 0 and v has its first zero before u's first positive zero.
    CHECK(v[0] < u[0]);
    for (std::size_t i = 0; i + 1 < std::min(u.size(), v.size()); ++i) {
      CHECK(u[i] < v[i + 1]);
      CHECK(v[i + 1] < u[i + 1]);
    }
  }
}

TEST_CASE("tangent errors") {
  CHECK(kind_of([] { gelfand_yaglom(0.0, 0.1, kK, kDelta); }) == ErrorKind::separatrix);
  CHECK(kind_of([] { variational_derivative(1.0, -1.0, kK, kDelta); }) == ErrorKind::validation);
  CHECK(tangent_zero_times(TangentKind::variational, 1.0, 0.0, kK, kDelta).empty());
}

}

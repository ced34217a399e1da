#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rotor/classical.hpp"
#include "test_util.hpp"

using namespace rotor;
using namespace rotor::classical;

TEST_SUITE("classical") {

TEST_CASE("standard map against long double re-evaluation") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> th(0.0, kTwoPi);
  std::uniform_real_distribution<double> pp(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    PhasePoint a{th(rng), pp(rng)};
    oracle::PointL b{a.theta, a.p};
    for (int n = 0; n < 5; ++n) {
      a = standard_map_step(a, 0.7, 1.3);
      b = oracle::standard_step(b, 0.7L, 1.3L);
    }
    CHECK(std::abs(std::remainder(a.theta - static_cast<double>(b.theta), kTwoPi)) < 1e-11);
    CHECK(std::abs(a.p - static_cast<double>(b.p)) < 1e-11);
    CHECK(a.theta >= 0.0);
    CHECK(a.theta < kTwoPi);
  }
}

TEST_CASE("epsilon-classical map is the standard map at strength K delta and unit period") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> th(0.0, kTwoPi);
  std::uniform_real_distribution<double> pp(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const PhasePoint a{th(rng), pp(rng)};
    const auto e = eps_classical_step(a, 5.0, 1e-2);
    const auto s = standard_map_step(a, 5.0 * 1e-2, 1.0);
    CHECK(e.theta == s.theta);
    CHECK(e.p == s.p);
  }
}

TEST_CASE("maps are area preserving") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> th(0.5, 5.5);
  std::uniform_real_distribution<double> pp(-0.2, 0.2);
  const auto params = SimParams::make(1.5, 0.3, 2, 0);
  for (auto kind : {MapKind::standard, MapKind::eps_classical}) {
    for (int i = 0; i < 50; ++i) {
      const PhasePoint x{th(rng), pp(rng)};
      const double h = 1e-6;
      auto d = [&](PhasePoint a, PhasePoint b) {
        const auto fa = map_step(a, kind, params);
        const auto fb = map_step(b, kind, params);
        return std::pair{std::remainder(fa.theta - fb.theta, kTwoPi) / (2 * h), (fa.p - fb.p) / (2 * h)};
      };
      const auto [a11, a21] = d({x.theta + h, x.p}, {x.theta - h, x.p});
      const auto [a12, a22] = d({x.theta, x.p + h}, {x.theta, x.p - h});
      CHECK(a11 * a22 - a12 * a21 == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("fixed points and wrapping") {
  const auto params = SimParams::make(5.0, 1e-4, 2, 0);
  for (auto kind : {MapKind::standard, MapKind::eps_classical}) {
    const auto a = map_step({0.0, 0.0}, kind, params);
    CHECK(a.theta == 0.0);
    CHECK(a.p == 0.0);
    const auto b = map_step({std::numbers::pi, 0.0}, kind, params);
    CHECK(b.theta == std::numbers::pi);
    CHECK(std::abs(b.p) < 1e-15);
  }
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_angle(kTwoPi) == 0.0);
  CHECK(wrap_angle(-1e-300) < kTwoPi);
  CHECK(kind_of([] { standard_map_step({NAN, 0.0}, 1.0, 1.0); }) == ErrorKind::validation);
  CHECK(kind_of([] { parse_map_kind("henon"); }) == ErrorKind::validation);
  CHECK(parse_map_kind("eps_classical") == MapKind::eps_classical);
}

TEST_CASE("ensembles") {
  const auto e = ClassicalEnsemble::uniform(4);
  REQUIRE(e.points.size() == 4);
  CHECK(e.points[0].theta == doctest::Approx(kTwoPi / 8));
  CHECK(e.points[3].theta == doctest::Approx(7 * kTwoPi / 8));
  const auto params = SimParams::make(5.0, 1e-4, 2, 0);
  const auto snaps = propagate(e, MapKind::eps_classical, params, 10);
  CHECK(snaps.size() == 11);
  CHECK(snaps[0].points[2].theta == e.points[2].theta);
  auto pt = e.points[1];
  for (int n = 0; n < 10; ++n) pt = eps_classical_step(pt, 5.0, 1e-4);
  CHECK(snaps[10].points[1].theta == pt.theta);
}

TEST_CASE("fold detection finds the first caustic near its predicted time") {
  const auto params = SimParams::make(5.0, 1e-4, 2, 0);
  std::vector<double> grid(512);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = kTwoPi * (i + 0.5) / 512.0;
  const auto folds = fold_detect(grid, MapKind::eps_classical, params, 120);
  REQUIRE_FALSE(folds.empty());
  const auto first = std::min_element(folds.begin(), folds.end(),
                                      [](auto& a, auto& b) { return a.step < b.step; });
  // Trajectories released near pi focus after ~70 iterates.
  CHECK(first->step >= 65);
  CHECK(first->step <= 76);
  CHECK(std::abs(first->theta - std::numbers::pi) < 0.2);

  CHECK(kind_of([&] { fold_detect(std::vector<double>{1.0, 2.0}, MapKind::standard, params, 1); }) ==
        ErrorKind::validation);
  CHECK(kind_of([&] {
          fold_detect(std::vector<double>{1.0, 2.0, 2.0}, MapKind::standard, params, 1);
        }) == ErrorKind::validation);
}

TEST_CASE("sections and momentum excursions") {
  const std::vector<PhasePoint> seeds{{std::numbers::pi + 0.3, 0.0}, {1.0, 0.5}};
  const auto params = SimParams::make(1.0, 0.1, 2, 0);
  const auto cloud = poincare_section(params, MapKind::eps_classical, seeds, 50);
  CHECK(cloud.size() == 102);
  CHECK(cloud[51].theta == seeds[1].theta);
  // K delta = 0.1: the libration near pi stays inside the resonance of
  // half-width 2 sqrt(K delta).
  const auto ex = momentum_excursions(params, MapKind::eps_classical, seeds, 2000);
  CHECK(ex[0] < 2.0 * std::sqrt(0.1));

  // K delta = 5: global chaos, some seed escapes far in momentum.
  const auto chaotic = SimParams::make(100.0, 0.05, 2, 0);
  std::vector<PhasePoint> many;
  for (int i = 0; i < 20; ++i) many.push_back({0.1 + 0.3 * i, 0.0});
  const auto far = momentum_excursions(chaotic, MapKind::eps_classical, many, 500);
  CHECK(*std::max_element(far.begin(), far.end()) > kTwoPi);
}

}

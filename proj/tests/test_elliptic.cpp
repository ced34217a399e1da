#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rotor/elliptic.hpp"
#include "test_util.hpp"

using namespace rotor;
using namespace rotor::elliptic;

TEST_SUITE("elliptic") {

TEST_CASE("agm") {
  // Gauss's constant: 1 / agm(1, sqrt 2).
  CHECK(agm(1.0, std::sqrt(2.0)) == doctest::Approx(1.1981402347355922).epsilon(1e-15));
  CHECK(agm(3.0, 3.0) == 3.0);
  CHECK(agm(1.0, 0.0) == 0.0);
  CHECK(kind_of([] { agm(-1.0, 1.0); }) == ErrorKind::validation);
}

TEST_CASE("complete_K against quadrature") {
  CHECK(complete_K(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-16));
  for (int i = 0; i <= 99; ++i) {
    const double k = 0.01 * i;
    const double ref = oracle::complete_K(k);
    CHECK(std::abs(complete_K(k) - ref) / ref < 1e-10);
    CHECK(complete_K(-k) == complete_K(k));
  }
  // Close to 1: K ~ log(4 / k').
  const double k = 1.0 - 1e-10;
  const double kc = std::sqrt((1.0 - k) * (1.0 + k));
  CHECK(complete_K(k) == doctest::Approx(std::log(4.0 / kc)).epsilon(1e-8));
}

TEST_CASE("complete_K errors") {
  CHECK(kind_of([] { complete_K(1.0); }) == ErrorKind::divergence);
  CHECK(kind_of([] { complete_K(-1.5); }) == ErrorKind::divergence);
  CHECK(kind_of([] { complete_K(NAN); }) == ErrorKind::validation);
}

TEST_CASE("jacobi identities on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-30.0, 30.0);
  std::uniform_real_distribution<double> Kd(-0.999, 0.999);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = U(rng);
    const double k = Kd(rng);
    const auto t = jacobi(u, k);
    worst = std::max(worst, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
    worst = std::max(worst, std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("sn inverts the incomplete integral") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> Phi(0.0, 3.0);
  std::uniform_real_distribution<double> Kd(0.0, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double phi = Phi(rng);
    const double k = Kd(rng);
    const double u = oracle::elliptic_F(phi, k);
    const auto t = jacobi(u, k);
    CHECK(t.sn == doctest::Approx(std::sin(phi)).epsilon(1e-11));
    CHECK(std::abs(t.cn - std::cos(phi)) < 1e-11);
    CHECK(std::abs(t.dn - std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi))) < 1e-11);
  }
}

TEST_CASE("degenerate moduli") {
  for (double u : {-3.0, -0.5, 0.0, 0.7, 2.0, 11.0}) {
    const auto c = jacobi(u, 0.0);
    CHECK(std::abs(c.sn - std::sin(u)) < 1e-12);
    CHECK(std::abs(c.cn - std::cos(u)) < 1e-12);
    CHECK(c.dn == 1.0);
    const auto h = jacobi(u, 1.0);
    CHECK(std::abs(h.sn - std::tanh(u)) < 1e-12);
    CHECK(std::abs(h.cn - 1.0 / std::cosh(u)) < 1e-12);
    CHECK(std::abs(h.dn - 1.0 / std::cosh(u)) < 1e-12);
    // Continuity into the circular limit.
    const auto s = jacobi(u, 1e-9);
    CHECK(std::abs(s.sn - std::sin(u)) < 1e-12);
  }
  CHECK(kind_of([] { jacobi(1.0, 1.5); }) == ErrorKind::validation);
  CHECK(kind_of([] { jacobi(INFINITY, 0.5); }) == ErrorKind::validation);
}

TEST_CASE("quarter period values") {
  for (double k : {0.1, 0.5, 0.9, -0.7}) {
    const double K = complete_K(k);
    const auto t = jacobi(K, k);
    CHECK(t.sn == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(t.cn) < 1e-12);
    CHECK(t.dn == doctest::Approx(std::sqrt(1 - k * k)).epsilon(1e-12));
    CHECK(cd(0.0, k) == 1.0);
    CHECK(std::abs(cd(K, k)) < 1e-12);
    CHECK(cd(2.0 * K, k) == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

}

#include "rotor/elliptic.hpp"

#include <array>
#include <cstddef>
#include <cmath>
#include <limits>
#include <numbers>

#include "rotor/error.hpp"

namespace rotor::elliptic {

namespace {

constexpr int kMaxLandenSteps = 32;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

double agm(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::validation, "agm arguments must be finite and non-negative");
  }
  if (a == 0.0 || b == 0.0) return 0.0;
  for (int i = 0; i < kMaxLandenSteps && std::abs(a - b) > kEps * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return 0.5 * (a + b);
}

double complete_K(double k) {
  if (!std::isfinite(k)) throw Error(ErrorKind::validation, "modulus must be finite");
  const double ak = std::abs(k);
  if (ak >= 1.0) {
    throw Error(ErrorKind::divergence, "complete elliptic integral diverges for |k| >= 1");
  }
  // sqrt((1-k)(1+k)) keeps the complementary modulus accurate near k = 1.
  const double kc = std::sqrt((1.0 - ak) * (1.0 + ak));
  return std::numbers::pi / (2.0 * agm(1.0, kc));
}

JacobiTriple jacobi(double u, double k) {
  if (!std::isfinite(u)) throw Error(ErrorKind::validation, "jacobi: u must be finite");
  if (!std::isfinite(k) || std::abs(k) > 1.0) {
    throw Error(ErrorKind::validation, "jacobi: modulus must satisfy |k| <= 1");
  }
  double ak = std::abs(k);
  if (ak == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (ak == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (ak > kMaxModulus) ak = kMaxModulus;

  // Bulirsch's Gauss-transformation scheme: run the AGM of (1, k') forward,
  // evaluate sin/cos of the scaled argument, then recur dn and the cotangent
  // back down the sequence.
  constexpr double kTol = 1e-8;  // squared by the recurrence
  std::array<double, kMaxLandenSteps> am{};
  std::array<double, kMaxLandenSteps> kc{};
  double mc = (1.0 - ak) * (1.0 + ak);
  double c = 1.0;
  std::size_t l = 0;
  for (double a = 1.0; l < am.size(); ++l) {
    am[l] = a;
    kc[l] = mc = std::sqrt(mc);
    c = 0.5 * (a + mc);
    if (!(std::abs(a - mc) > kTol * a)) {
      ++l;
      break;
    }
    mc *= a;
    a = c;
  }
  const double x = u * c;
  double sn = std::sin(x);
  double cn = std::cos(x);
  double dn = 1.0;
  if (sn != 0.0) {
    double a = cn / sn;
    c *= a;
    while (l-- > 0) {
      const double b = am[l];
      a *= c;
      c *= dn;
      dn = (kc[l] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -a : a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

double cd(double u, double k) {
  const auto t = jacobi(u, k);
  return t.cn / t.dn;
}

}  // namespace rotor::elliptic

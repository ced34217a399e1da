#pragma once

// Complete elliptic integral of the first kind and Jacobi elliptic functions
// sn, cn, dn by the arithmetic-geometric mean (Bulirsch's Gauss-transformation form).
// Modulus convention: functions take the modulus k, parameter m = k^2.

namespace rotor::elliptic {

/// Largest |k| used by jacobi() before the exact k = 1 degeneration; moduli
/// in (kMaxModulus, 1) are clamped to it. Accuracy degrades as |k| -> 1
/// because the quarter period grows like log(4 / sqrt(1 - k^2)).
inline constexpr double kMaxModulus = 1.0 - 1e-12;

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Arithmetic-geometric mean of two non-negative numbers.
double agm(double a, double b);

/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2))). Throws Error(divergence) for
/// |k| >= 1 and Error(validation) for non-finite k.
double complete_K(double k);

/// (sn, cn, dn)(u, k) for |k| <= 1. k = 0 and |k| = 1 return the circular
/// and hyperbolic degenerations exactly.
JacobiTriple jacobi(double u, double k);

/// cn(u, k) / dn(u, k); the combination appearing in the pendulum solution.
double cd(double u, double k);

}  // namespace rotor::elliptic

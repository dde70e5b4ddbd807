#pragma once

// Reference values computed without the grid, solver or prover code.

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>

namespace oracle {

// Bisection for a sign change of f on [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Clamped beam on (-1,1), even mode: tan k + tanh k = 0, eigenvalue k^4.
inline double beam_nu1() {
  const double k = bisect([](double k) { return std::sin(k) * std::cosh(k) + std::cos(k) * std::sinh(k); }, 2.0, 3.0);
  return std::pow(k, 4);
}

// Radial clamped plate in dimension N >= 2: J_n(k) I_{n+1}(k) + I_n(k) J_{n+1}(k) = 0 with n = N/2 - 1.
inline double plate_nu1(int N) {
  const double n = 0.5 * N - 1.0;
  auto f = [n](double k) {
    using boost::math::cyl_bessel_i;
    using boost::math::cyl_bessel_j;
    return cyl_bessel_j(n, k) * cyl_bessel_i(n + 1, k) + cyl_bessel_i(n, k) * cyl_bessel_j(n + 1, k);
  };
  // First sign change from above k = 1.
  double a = 1.0;
  double fa = f(a);
  for (double b = 1.05; b < 40.0; b += 0.05) {
    const double fb = f(b);
    if ((fa > 0) != (fb > 0)) return std::pow(bisect(f, a, b), 4);
    a = b;
    fa = fb;
  }
  return NAN;
}

// Square of the first zero of J_0.
inline double j01_squared() {
  const double z = bisect([](double x) { return boost::math::cyl_bessel_j(0, x); }, 2.0, 3.0);
  return z * z;
}

using Q = boost::multiprecision::cpp_rational;

// (8/9)(N - 2/3)(N - 8/3), expanded by hand: (8/81)(3N-2)(3N-8).
inline Q lambda_bar(int N) { return Q(8 * (3 * N - 2) * (3 * N - 8), 81); }

inline Q hardy(int N) { return Q(N * N * (N - 4) * (N - 4), 16); }

// p(p-2)(p+N-2)(p+N-4) evaluated from the radial Laplacian applied twice by hand:
// Delta r^p = p(p+N-2) r^{p-2}.
inline double bilaplacian_power(double p, int N) {
  const double first = p * (p + N - 2);
  const double q = p - 2;
  return first * q * (q + N - 2);
}

}  // namespace oracle

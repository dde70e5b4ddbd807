#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace mems {

// Closed interval with outward rounding: every operation widens the round-to-nearest result by one ulp.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval entire() { return {-INFINITY, INFINITY}; }
  static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool positive() const { return lo > 0.0; }
  bool negative() const { return hi < 0.0; }
};

double next_down(double x);
double next_up(double x);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

// x^p for x >= 0; p is a double approximation of the exact exponent (relative error <= 2^-53 accounted for).
Interval pow_nonneg(const Interval& x, double p);

}  // namespace mems

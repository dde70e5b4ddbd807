#include "mems/interval.hpp"

namespace mems {

double next_down(double x) { return std::nextafter(x, -INFINITY); }
double next_up(double x) { return std::nextafter(x, INFINITY); }

namespace {

// 0 * inf = 0 inside interval products
double mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Interval widen(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) return Interval::entire();
  return {next_down(lo), next_up(hi)};
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo + b.lo, a.hi + b.hi); }

Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo - b.hi, a.hi - b.lo); }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const double p[4] = {mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo > 0.0 || b.hi < 0.0) {
    const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  if (b.lo == 0.0 && b.hi > 0.0) {
    // b in [0, h]: 1/b in [1/h, inf]
    if (a.lo >= 0.0) return {a.lo == 0.0 ? 0.0 : next_down(a.lo / b.hi), INFINITY};
    if (a.hi <= 0.0) return {-INFINITY, a.hi == 0.0 ? 0.0 : next_up(a.hi / b.hi)};
  }
  if (b.hi == 0.0 && b.lo < 0.0) {
    if (a.lo >= 0.0) return {-INFINITY, a.lo == 0.0 ? 0.0 : next_up(a.lo / b.lo)};
    if (a.hi <= 0.0) return {a.hi == 0.0 ? 0.0 : next_down(a.hi / b.lo), INFINITY};
  }
  return Interval::entire();
}

Interval intersect(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

double pow_down(double x, double p) {
  if (x == 0.0) return p > 0.0 ? 0.0 : INFINITY;
  if (std::isinf(x)) return p > 0.0 ? INFINITY : 0.0;
  const double v = std::pow(x, p);
  const double rel = (4.0 + std::abs(p * std::log(x))) * kUlp;
  return next_down(v * (1.0 - rel));
}

double pow_up(double x, double p) {
  if (x == 0.0) return p > 0.0 ? 0.0 : INFINITY;
  if (std::isinf(x)) return p > 0.0 ? INFINITY : 0.0;
  const double v = std::pow(x, p);
  const double rel = (4.0 + std::abs(p * std::log(x))) * kUlp;
  return next_up(v * (1.0 + rel));
}

}  // namespace

Interval pow_nonneg(const Interval& x, double p) {
  const double lo = std::max(0.0, x.lo);
  const double hi = x.hi;
  if (p == 0.0) return {1.0, 1.0};
  if (p > 0.0) return {pow_down(lo, p), pow_up(hi, p)};
  return {pow_down(hi, p), pow_up(lo, p)};
}

}  // namespace mems

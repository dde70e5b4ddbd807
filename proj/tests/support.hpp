#pragma once

#include "mems/radial_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace support {

struct OperatorError {
  // max relative error against the exact values on the window
  double error = 0.0;
  // eps * (|A| |u| + |offset|) relative to the exact values: the round-off floor of the matrix product
  double floor = 0.0;
};

// Applies the clamped bilaplacian to samples of u and compares with `exact` on r in [lo, hi].
inline OperatorError bilaplacian_error(int N, int M, const mems::BoundaryData& bc, const std::function<double(double)>& u,
                                       const std::function<double(double)>& exact, double lo = 0.1, double hi = 0.9) {
  const auto grid = mems::build_grid(N, M, 2.0);
  std::vector<double> s;
  for (double r : grid->nodes()) s.push_back(u(r));
  const mems::RadialOperator op = mems::bilaplacian_clamped(*grid, bc);
  const auto out = op.apply(std::span<const double>(s).first(M - 1));
  OperatorError e;
  for (int i = 0; i < M - 1; ++i) {
    const double r = grid->nodes()[i];
    if (r < lo || r > hi) continue;
    double mag = std::abs(op.offset[i]);
    for (int j = std::max(0, i - 2); j <= std::min(M - 2, i + 2); ++j) mag += std::abs(op.principal.at(i, j) * s[j]);
    const double ex = exact(r);
    e.error = std::max(e.error, std::abs(out[i] - ex) / std::abs(ex));
    e.floor = std::max(e.floor, std::numeric_limits<double>::epsilon() * mag / std::abs(ex));
  }
  return e;
}

struct OrderEstimate {
  int M = 0;
  double order = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
};

// Observed order between M and 2M for the finest M in `sizes` whose fine error still exceeds
// 20 times the round-off floor.
inline OrderEstimate observed_order(const std::function<OperatorError(int)>& err, std::initializer_list<int> sizes) {
  OrderEstimate best;
  for (int M : sizes) {
    const OperatorError a = err(M);
    const OperatorError b = err(2 * M);
    if (b.error < 20.0 * b.floor) break;
    best = {M, std::log2(a.error / b.error), a.error, b.error};
  }
  return best;
}

}  // namespace support

#pragma once

#include "mems/branch.hpp"
#include "mems/radial_core.hpp"

#include <string>
#include <vector>

namespace mems {

struct EigenResult {
  double value = 0.0;
  // Normalized so that the discrete integral over the ball of phi^2 is 1; phi(1) = 0.
  RadialField eigenfunction;
  // ||A^{-1} phi - phi / value|| relative to ||phi / value||, cell-volume norm.
  double residual = 0.0;
  int iterations = 0;
  std::string method;
  // False when the linearized operator is not positive definite to working precision
  // (at or past the discrete fold); value is then NaN.
  bool definite = true;
};

struct EigenOptions {
  double tol = 1e-13;
  int max_iter = 500;
};

// Smallest eigenvalue of  int (Delta phi)^2 - 2 lambda int phi^2 / (1-u)^3  against  int phi^2  over clamped radial phi.
EigenResult mu1(const RadialField& profile, double lambda, EigenOptions opt = {});

// Rayleigh quotient of the same form for phi on the interior nodes.
double mu1_rayleigh(const RadialField& profile, double lambda, std::span<const double> phi);

struct Nu1Result {
  double value = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  int coarse_nodes = 0;
  int fine_nodes = 0;
};

// Clamped-plate eigenvalue on `grid` and on twice as many nodes, Richardson-extrapolated (order 2).
Nu1Result nu1(int N, const RadialGrid& grid);

struct BranchStability {
  // NaN where the operator is indefinite.
  std::vector<double> mu1;
  // Over the points with a definite operator.
  bool all_positive = true;
  std::vector<double> indefinite_at;
  // "decreasing", "increasing" or "non-monotone" along increasing lambda
  std::string direction;
};

BranchStability stability_along_branch(const std::vector<BranchPoint>& points);

}  // namespace mems

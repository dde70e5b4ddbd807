#pragma once

#include "mems/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mems {

// Graded radial grid r_i = (i/M)^gamma on (0,1] with finite-volume cells.
// Cell i spans [f_{i-1}, f_i] with f_0 = 0, f_M = 1 and interior faces at node midpoints.
class RadialGrid {
public:
  RadialGrid(int dimension, int nodes, double grading);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(r_.size()); }
  double grading() const { return grading_; }

  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& faces() const { return faces_; }
  // Cell measures int r^{N-1} dr, without the sphere area.
  const std::vector<double>& volumes() const { return volumes_; }
  // f_i^{N-1} / (r_{i+1} - r_i) for the M-1 interior faces.
  const std::vector<double>& conductances() const { return conductances_; }

private:
  int dimension_;
  double grading_;
  std::vector<double> r_;
  std::vector<double> faces_;
  std::vector<double> volumes_;
  std::vector<double> conductances_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr build_grid(int N, int M, double gamma = 2.0);

struct BoundaryData {
  double alpha = 0.0;
  double beta = 0.0;

  bool admissible() const { return beta <= 0.0 && alpha - beta / 2.0 < 1.0; }
};

struct RadialField {
  GridPtr grid;
  std::vector<double> values;
  BoundaryData boundary;

  double sup() const;
  bool finite() const;
};

template <class F>
RadialField sample(GridPtr grid, const BoundaryData& bc, F&& fn) {
  RadialField out{grid, {}, bc};
  out.values.reserve(grid->size());
  for (double r : grid->nodes()) out.values.push_back(fn(r));
  return out;
}

class BandedMatrix {
public:
  BandedMatrix() = default;
  BandedMatrix(int n, int lower, int upper);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  double& at(int i, int j) { return data_[static_cast<size_t>(i) * width() + (j - i + kl_)]; }
  double at(int i, int j) const;
  bool in_band(int i, int j) const { return j - i >= -kl_ && j - i <= ku_ && j >= 0 && j < n_; }

  void multiply(std::span<const double> x, std::span<double> y) const;

private:
  int width() const { return kl_ + ku_ + 1; }

  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  std::vector<double> data_;
};

struct RadialOperator {
  BandedMatrix principal;
  std::vector<double> offset;
  int dimension = 0;
  std::string closure;

  std::vector<double> apply(std::span<const double> u) const;
};

// Conservative Laplacian on all M nodes: zero flux through the origin, flux `slope` through r=1.
RadialOperator laplacian_op(const RadialGrid& grid, double slope = 0.0);

// Delta^2 on the M-1 unknowns u_1..u_{M-1}; u_M = alpha and u'(1) = beta enter the offset.
RadialOperator bilaplacian_clamped(const RadialGrid& grid, const BoundaryData& bc);

// Applies the clamped bilaplacian to nodal samples; the last sample is replaced by bc.alpha.
std::vector<double> apply_bilaplacian(const RadialGrid& grid, const BoundaryData& bc,
                                      std::span<const double> samples);

// sum_i V_i (Delta phi)_i^2 over all cells, phi given on the M-1 interior nodes with phi_M = 0, phi'(1) = 0.
double plate_energy(const RadialGrid& grid, std::span<const double> phi);

double power_bilaplacian_coeff(double p, int N);
Rational power_bilaplacian_coeff(const Rational& p, int N);

double unit_sphere_area(int N);

double integrate_ball(const RadialGrid& grid, std::span<const double> f);
double integrate_ball(const RadialField& f);

double phi_lift(const BoundaryData& bc, double r);

// Weighted inner product sum V_i x_i y_i over the first n cells.
double weighted_dot(const RadialGrid& grid, std::span<const double> x, std::span<const double> y);

// Green's solve of Delta^2 u = f on interior nodes with u(1) = alpha, u'(1) = beta.
// Works through cumulative fluxes, so it is exact for the discrete operator and stable on strongly graded grids.
class ClampedSolver {
public:
  explicit ClampedSolver(GridPtr grid);

  const GridPtr& grid() const { return grid_; }

  // f has M-1 entries; u receives all M nodal values.
  void solve(std::span<const double> f, const BoundaryData& bc, std::span<double> u) const;
  std::vector<double> solve(std::span<const double> f, const BoundaryData& bc) const;

  // Solves (I - G diag(q)) x = b on the M-1 interior nodes, q >= 0, with homogeneous boundary data.
  // Returns false when the operator is not positive definite.
  bool solve_shifted(std::span<const double> q, std::span<const double> b, std::span<double> x) const;

private:
  GridPtr grid_;
  double total_volume_ = 0.0;
};

}  // namespace mems

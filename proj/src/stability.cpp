#include "mems/stability.hpp"

#include "mems/simd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mems {

namespace {

EigenResult inverse_iteration(const GridPtr& grid, std::span<const double> q, EigenOptions opt) {
  const ClampedSolver G(grid);
  const int M = grid->size();
  const size_t n = M - 1;
  const BoundaryData none{};

  std::vector<double> x(n), y(n), Gx(M);
  // Start from the plate-like shape (1 - r^2)^2, which has the sign of the first mode.
  for (size_t i = 0; i < n; ++i) {
    const double r = grid->nodes()[i];
    x[i] = (1.0 - r * r) * (1.0 - r * r);
  }
  auto normalize = [&](std::vector<double>& v) {
    const double s = std::sqrt(weighted_dot(*grid, v, v));
    for (double& e : v) e /= s;
  };
  normalize(x);

  // y = (B - Q)^{-1} x  via  (I - G Q) y = G x
  auto apply_inverse = [&](std::span<const double> v, std::vector<double>& out) {
    G.solve(v, none, Gx);
    return G.solve_shifted(q, std::span<const double>(Gx).first(n), out);
  };

  EigenResult res;
  res.method = "inverse iteration, Green's solve + conjugate gradients";
  double mu = 0.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (!apply_inverse(x, y)) {
      res.definite = false;
      res.iterations = it;
      mu = std::numeric_limits<double>::quiet_NaN();
      break;
    }
    const double xy = weighted_dot(*grid, x, y);
    const double mu_new = 1.0 / xy;
    res.iterations = it;
    double rr = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double d = y[i] - x[i] / mu_new;
      rr += grid->volumes()[i] * d * d;
    }
    res.residual = std::sqrt(rr) * std::abs(mu_new);
    x = y;
    normalize(x);
    const bool settled = std::abs(mu_new - mu) <= opt.tol * std::abs(mu_new);
    mu = mu_new;
    if (settled && res.residual <= 1e-9) break;
  }
  res.value = mu;

  double sign = 0.0;
  for (size_t i = 0; i < n; ++i) sign += grid->volumes()[i] * x[i];
  const double scale = (sign < 0.0 ? -1.0 : 1.0) / std::sqrt(unit_sphere_area(grid->dimension()));
  res.eigenfunction.grid = grid;
  res.eigenfunction.boundary = none;
  res.eigenfunction.values.resize(M);
  for (size_t i = 0; i < n; ++i) res.eigenfunction.values[i] = x[i] * scale;
  res.eigenfunction.values[M - 1] = 0.0;
  return res;
}

std::vector<double> reaction_weight(const RadialField& profile, double lambda) {
  const size_t n = profile.values.size() - 1;
  std::vector<double> f(n), q(n);
  simd::kernels().reaction(profile.values.data(), lambda, f.data(), q.data(), n);
  return q;
}

}  // namespace

EigenResult mu1(const RadialField& profile, double lambda, EigenOptions opt) {
  if (!profile.grid) throw std::invalid_argument("profile without grid");
  if (!(profile.sup() < 1.0)) throw std::domain_error("mu1 needs sup u < 1");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  return inverse_iteration(profile.grid, reaction_weight(profile, lambda), opt);
}

double mu1_rayleigh(const RadialField& profile, double lambda, std::span<const double> phi) {
  const auto& grid = *profile.grid;
  const std::vector<double> q = reaction_weight(profile, lambda);
  double num = plate_energy(grid, phi);
  double den = 0.0;
  for (size_t i = 0; i < phi.size(); ++i) {
    num -= grid.volumes()[i] * q[i] * phi[i] * phi[i];
    den += grid.volumes()[i] * phi[i] * phi[i];
  }
  return num / den;
}

Nu1Result nu1(int N, const RadialGrid& grid) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  Nu1Result out;
  out.coarse_nodes = grid.size();
  out.fine_nodes = 2 * grid.size();
  const GridPtr coarse = build_grid(N, out.coarse_nodes, grid.grading());
  const GridPtr fine = build_grid(N, out.fine_nodes, grid.grading());
  out.coarse = inverse_iteration(coarse, std::vector<double>(out.coarse_nodes - 1, 0.0), {}).value;
  out.fine = inverse_iteration(fine, std::vector<double>(out.fine_nodes - 1, 0.0), {}).value;
  out.value = out.fine + (out.fine - out.coarse) / 3.0;
  return out;
}

BranchStability stability_along_branch(const std::vector<BranchPoint>& points) {
  BranchStability out;
  std::vector<double> definite;
  for (const auto& p : points) {
    const EigenResult e = mu1(p.profile, p.lambda);
    out.mu1.push_back(e.value);
    if (!e.definite) {
      out.indefinite_at.push_back(p.lambda);
      continue;
    }
    definite.push_back(e.value);
    if (!(e.value > 0.0)) out.all_positive = false;
  }
  bool inc = true, dec = true;
  for (size_t i = 1; i < definite.size(); ++i) {
    if (definite[i] <= definite[i - 1]) inc = false;
    if (definite[i] >= definite[i - 1]) dec = false;
  }
  out.direction = dec ? "decreasing" : inc ? "increasing" : "non-monotone";
  return out;
}

}  // namespace mems

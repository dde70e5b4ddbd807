#include "mems/radial_core.hpp"

#include "mems/simd.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mems {

ClampedSolver::ClampedSolver(GridPtr grid) : grid_(std::move(grid)) {
  const auto& V = grid_->volumes();
  total_volume_ = std::accumulate(V.begin(), V.end(), 0.0);
}

void ClampedSolver::solve(std::span<const double> f, const BoundaryData& bc, std::span<double> u) const {
  const int M = grid_->size();
  if (static_cast<int>(f.size()) != M - 1 || static_cast<int>(u.size()) != M)
    throw std::invalid_argument("clamped solve: size mismatch");
  const auto& V = grid_->volumes();
  const auto& c = grid_->conductances();

  // g = Delta u solves Delta g = f with zero flux at the origin; g is fixed up to a constant
  // by the total boundary flux  sum V_j g_j = beta.
  std::vector<double> T(M);
  T[0] = 0.0;
  double S = 0.0;
  double VT = 0.0;
  for (int i = 0; i + 1 < M; ++i) {
    S += V[i] * f[i];
    T[i + 1] = T[i] + S / c[i];
    VT += V[i] * T[i];
  }
  VT += V[M - 1] * T[M - 1];
  const double g0 = (bc.beta - VT) / total_volume_;

  // u_{i+1} - u_i = (sum_{j<=i} V_j g_j) / c_i, anchored at u_M = alpha.
  double F = 0.0;
  for (int i = 0; i + 1 < M; ++i) {
    F += V[i] * (g0 + T[i]);
    u[i] = F / c[i];
  }
  u[M - 1] = bc.alpha;
  for (int i = M - 2; i >= 0; --i) u[i] = u[i + 1] - u[i];
}

std::vector<double> ClampedSolver::solve(std::span<const double> f, const BoundaryData& bc) const {
  std::vector<double> u(grid_->size());
  solve(f, bc, u);
  return u;
}

// Symmetric form (I - S G S) z = S b with S = sqrt(q), then x = b + G S z.
// Conjugate gradients in the cell-volume inner product, in which G is self-adjoint.
bool ClampedSolver::solve_shifted(std::span<const double> q, std::span<const double> b, std::span<double> x) const {
  const auto& kt = simd::kernels();
  const size_t n = b.size();
  const double* w = grid_->volumes().data();
  const BoundaryData none{};

  std::vector<double> s(n), z(n, 0.0), res(n), p(n), Kp(n), tmp(n), full(n + 1);
  for (size_t i = 0; i < n; ++i) s[i] = std::sqrt(q[i]);
  auto applyK = [&](std::span<const double> v, std::span<double> out) {
    for (size_t i = 0; i < n; ++i) tmp[i] = s[i] * v[i];
    solve(tmp, none, full);
    for (size_t i = 0; i < n; ++i) out[i] = v[i] - s[i] * full[i];
  };

  for (size_t i = 0; i < n; ++i) res[i] = s[i] * b[i];
  p = res;
  double rr = kt.weighted_dot(w, res.data(), res.data(), n);
  const double r0 = std::sqrt(rr);
  for (int it = 0; it < 2000 && r0 > 0.0; ++it) {
    if (std::sqrt(rr) <= 1e-14 * r0) break;
    applyK(p, Kp);
    const double pKp = kt.weighted_dot(w, p.data(), Kp.data(), n);
    if (!(pKp > 0.0)) return false;
    const double a = rr / pKp;
    kt.axpy(a, p.data(), z.data(), n);
    kt.axpy(-a, Kp.data(), res.data(), n);
    const double rn = kt.weighted_dot(w, res.data(), res.data(), n);
    const double beta = rn / rr;
    for (size_t i = 0; i < n; ++i) p[i] = res[i] + beta * p[i];
    rr = rn;
  }
  for (size_t i = 0; i < n; ++i) tmp[i] = s[i] * z[i];
  solve(tmp, none, full);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] + full[i];
  return true;
}

}  // namespace mems

#include "mems/radial_core.hpp"

#include "mems/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mems {

RadialGrid::RadialGrid(int dimension, int nodes, double grading)
    : dimension_(dimension), grading_(grading) {
  if (dimension < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (nodes < 16) throw std::invalid_argument("grid needs at least 16 nodes");
  if (!(grading >= 1.0)) throw std::invalid_argument("grading exponent must be >= 1");

  const int M = nodes;
  r_.resize(M);
  for (int i = 1; i <= M; ++i) r_[i - 1] = std::pow(static_cast<double>(i) / M, grading);
  r_[M - 1] = 1.0;

  faces_.resize(M + 1);
  faces_[0] = 0.0;
  for (int i = 1; i < M; ++i) faces_[i] = 0.5 * (r_[i - 1] + r_[i]);
  faces_[M] = 1.0;

  const double N = dimension;
  volumes_.resize(M);
  for (int i = 0; i < M; ++i)
    volumes_[i] = (std::pow(faces_[i + 1], N) - std::pow(faces_[i], N)) / N;

  conductances_.resize(M - 1);
  for (int i = 0; i + 1 < M; ++i)
    conductances_[i] = std::pow(faces_[i + 1], N - 1.0) / (r_[i + 1] - r_[i]);
}

GridPtr build_grid(int N, int M, double gamma) { return std::make_shared<const RadialGrid>(N, M, gamma); }

double RadialField::sup() const {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  return *std::max_element(values.begin(), values.end());
}

bool RadialField::finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

BandedMatrix::BandedMatrix(int n, int lower, int upper)
    : n_(n), kl_(lower), ku_(upper), data_(static_cast<size_t>(n) * (lower + upper + 1), 0.0) {}

double BandedMatrix::at(int i, int j) const {
  if (!in_band(i, j)) return 0.0;
  return data_[static_cast<size_t>(i) * width() + (j - i + kl_)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kl_);
    const int j1 = std::min(n_ - 1, i + ku_);
    const double* row = &data_[static_cast<size_t>(i) * width()];
    double s = 0.0;
    for (int j = j0; j <= j1; ++j) s += row[j - i + kl_] * x[j];
    y[i] = s;
  }
}

std::vector<double> RadialOperator::apply(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != principal.size())
    throw std::invalid_argument("operator/vector size mismatch");
  std::vector<double> out(u.size());
  principal.multiply(u, out);
  for (size_t i = 0; i < out.size(); ++i) out[i] += offset[i];
  return out;
}

RadialOperator laplacian_op(const RadialGrid& grid, double slope) {
  const int M = grid.size();
  const auto& V = grid.volumes();
  const auto& c = grid.conductances();
  RadialOperator op;
  op.principal = BandedMatrix(M, 1, 1);
  op.offset.assign(M, 0.0);
  op.dimension = grid.dimension();
  op.closure = "zero flux at r=0; prescribed slope at r=1";
  for (int i = 0; i < M; ++i) {
    double diag = 0.0;
    if (i > 0) {
      op.principal.at(i, i - 1) = c[i - 1] / V[i];
      diag -= c[i - 1] / V[i];
    }
    if (i + 1 < M) {
      op.principal.at(i, i + 1) = c[i] / V[i];
      diag -= c[i] / V[i];
    }
    op.principal.at(i, i) = diag;
  }
  op.offset[M - 1] = slope / V[M - 1];
  return op;
}

RadialOperator bilaplacian_clamped(const RadialGrid& grid, const BoundaryData& bc) {
  const int M = grid.size();
  const int n = M - 1;
  const RadialOperator L = laplacian_op(grid, bc.beta);
  const BandedMatrix& A = L.principal;

  RadialOperator op;
  op.principal = BandedMatrix(n, 2, 2);
  op.offset.assign(n, 0.0);
  op.dimension = grid.dimension();
  op.closure = "Delta o Delta; u(1)=alpha, u'(1)=beta";

  // Second Laplacian acts on rows 0..n-1 of g = L u over all M nodes.
  std::vector<double> g_affine(M, 0.0);
  for (int k = 0; k < M; ++k) g_affine[k] = bc.alpha * A.at(k, M - 1) + L.offset[k];

  for (int i = 0; i < n; ++i) {
    for (int k = std::max(0, i - 1); k <= std::min(M - 1, i + 1); ++k) {
      const double a = A.at(i, k);
      if (a == 0.0) continue;
      for (int j = std::max(0, k - 1); j <= std::min(n - 1, k + 1); ++j) op.principal.at(i, j) += a * A.at(k, j);
      op.offset[i] += a * g_affine[k];
    }
  }
  return op;
}

std::vector<double> apply_bilaplacian(const RadialGrid& grid, const BoundaryData& bc,
                                      std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != grid.size()) throw std::invalid_argument("sample count mismatch");
  const RadialOperator op = bilaplacian_clamped(grid, bc);
  return op.apply(samples.first(samples.size() - 1));
}

double plate_energy(const RadialGrid& grid, std::span<const double> phi) {
  const int M = grid.size();
  if (static_cast<int>(phi.size()) != M - 1) throw std::invalid_argument("expected interior samples");
  const auto& V = grid.volumes();
  const auto& c = grid.conductances();
  auto at = [&](int i) { return i < M - 1 ? phi[i] : 0.0; };
  double e = 0.0;
  for (int i = 0; i < M; ++i) {
    double flux = 0.0;
    if (i + 1 < M) flux += c[i] * (at(i + 1) - at(i));
    if (i > 0) flux -= c[i - 1] * (at(i) - at(i - 1));
    e += flux * flux / V[i];
  }
  return e;
}

double power_bilaplacian_coeff(double p, int N) {
  return p * (p - 2.0) * (p + N - 2.0) * (p + N - 4.0);
}

Rational power_bilaplacian_coeff(const Rational& p, int N) {
  return p * (p - 2) * (p + N - 2) * (p + N - 4);
}

double unit_sphere_area(int N) {
  const double h = 0.5 * N;
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double integrate_ball(const RadialGrid& grid, std::span<const double> f) {
  const auto& r = grid.nodes();
  const int M = grid.size();
  if (static_cast<int>(f.size()) != M) throw std::invalid_argument("sample count mismatch");
  const double N = grid.dimension();

  std::vector<double> g(M);
  for (int i = 0; i < M; ++i) g[i] = f[i] * std::pow(r[i], N - 1.0);

  double sum = 0.0;
  for (int i = 0; i + 1 < M; ++i) sum += 0.5 * (g[i] + g[i + 1]) * (r[i + 1] - r[i]);

  // [0, r_1]: power law through the first two nodes
  double head;
  if (g[0] != 0.0 && g[1] != 0.0 && (g[0] > 0) == (g[1] > 0)) {
    const double s = std::log(g[1] / g[0]) / std::log(r[1] / r[0]);
    head = s > -1.0 ? g[0] * r[0] / (s + 1.0) : std::copysign(INFINITY, g[0]);
  } else {
    head = 0.5 * g[0] * r[0];
  }
  return unit_sphere_area(grid.dimension()) * (sum + head);
}

double integrate_ball(const RadialField& f) { return integrate_ball(*f.grid, f.values); }

double phi_lift(const BoundaryData& bc, double r) {
  return (bc.alpha - bc.beta / 2.0) + (bc.beta / 2.0) * r * r;
}

double weighted_dot(const RadialGrid& grid, std::span<const double> x, std::span<const double> y) {
  const size_t n = std::min(x.size(), y.size());
  return simd::kernels().weighted_dot(grid.volumes().data(), x.data(), y.data(), n);
}

}  // namespace mems

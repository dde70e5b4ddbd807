#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/branch.hpp"
#include "mems/simd.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

using namespace mems;
using simd::Isa;

namespace {

std::vector<double> uniform(std::mt19937_64& rng, size_t n, double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const simd::KernelTable* avx2_or_skip() {
  const simd::KernelTable* t = simd::avx2_kernels();
  if (t == nullptr || !simd::cpu_supports(Isa::Avx2)) return nullptr;
  return t;
}

// Lengths covering empty input, tails of every residue and multi-block bodies.
const size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 127, 1000, 4099};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(simd::cpu_supports(Isa::Scalar));
  CHECK(simd::scalar_kernels().isa == Isa::Scalar);
  CHECK(simd::select_isa(Isa::Scalar));
  CHECK(simd::kernels().isa == Isa::Scalar);
  simd::reset_isa();
  if (avx2_or_skip() != nullptr) CHECK(simd::kernels().isa == Isa::Avx2);
}

TEST_CASE("selecting an unsupported table keeps the current one") {
  simd::select_isa(Isa::Scalar);
  if (avx2_or_skip() == nullptr) {
    CHECK_FALSE(simd::select_isa(Isa::Avx2));
    CHECK(simd::kernels().isa == Isa::Scalar);
  } else {
    CHECK(simd::select_isa(Isa::Avx2));
    CHECK(simd::kernels().isa == Isa::Avx2);
  }
  simd::reset_isa();
}

TEST_CASE("weighted_dot agrees with scalar up to summation order") {
  const auto* v = avx2_or_skip();
  if (v == nullptr) return;
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(1);
  for (size_t n : kSizes) {
    const auto w = uniform(rng, n, 0.0, 1.0);
    const auto x = uniform(rng, n, -1.0, 1.0);
    const auto y = uniform(rng, n, -1.0, 1.0);
    const double a = s.weighted_dot(w.data(), x.data(), y.data(), n);
    const double b = v->weighted_dot(w.data(), x.data(), y.data(), n);
    double mag = 0.0;
    for (size_t i = 0; i < n; ++i) mag += std::abs(w[i] * x[i] * y[i]);
    CAPTURE(n);
    CHECK(std::abs(a - b) <= (n + 4) * 2.3e-16 * mag + 1e-300);
  }
}

TEST_CASE("axpy is bit-identical to scalar") {
  const auto* v = avx2_or_skip();
  if (v == nullptr) return;
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(2);
  for (size_t n : kSizes) {
    const auto x = uniform(rng, n, -3.0, 3.0);
    auto y1 = uniform(rng, n, -3.0, 3.0);
    auto y2 = y1;
    s.axpy(0.37, x.data(), y1.data(), n);
    v->axpy(0.37, x.data(), y2.data(), n);
    CAPTURE(n);
    CHECK(bitwise_equal(y1, y2));
  }
}

TEST_CASE("reaction is bit-identical to scalar, with and without derivative") {
  const auto* v = avx2_or_skip();
  if (v == nullptr) return;
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(3);
  for (size_t n : kSizes) {
    const auto u = uniform(rng, n, -0.5, 0.999);
    std::vector<double> f1(n), f2(n), q1(n), q2(n);
    s.reaction(u.data(), 12.5, f1.data(), q1.data(), n);
    v->reaction(u.data(), 12.5, f2.data(), q2.data(), n);
    CAPTURE(n);
    CHECK(bitwise_equal(f1, f2));
    CHECK(bitwise_equal(q1, q2));
    std::vector<double> f3(n);
    v->reaction(u.data(), 12.5, f3.data(), nullptr, n);
    CHECK(bitwise_equal(f1, f3));
  }
}

TEST_CASE("reaction matches its closed form") {
  const auto& s = simd::scalar_kernels();
  const double u[3] = {0.0, 0.5, -1.0};
  double f[3], q[3];
  s.reaction(u, 2.0, f, q, 3);
  CHECK(f[0] == 2.0);
  CHECK(f[1] == 8.0);
  CHECK(f[2] == 0.5);
  CHECK(q[0] == 4.0);
  CHECK(q[1] == 32.0);
  CHECK(q[2] == 0.5);
}

TEST_CASE("exp_sum agrees with scalar at ulp level") {
  const auto* v = avx2_or_skip();
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(4);
  const std::vector<double> coef{1.0, -0.3, 2.5, 0.01};
  const std::vector<double> expo{0.0, 1.5, -4.0 / 3.0, 7.25};
  for (size_t n : kSizes) {
    const auto t = uniform(rng, n, -30.0, 3.0);
    std::vector<double> a(n), b(n);
    s.exp_sum(coef.data(), expo.data(), coef.size(), t.data(), a.data(), n);
    for (size_t j = 0; j < n; ++j) {
      double ref = 0.0, mag = 0.0;
      for (size_t k = 0; k < coef.size(); ++k) {
        ref += coef[k] * std::exp(expo[k] * t[j]);
        mag += std::abs(coef[k] * std::exp(expo[k] * t[j]));
      }
      CHECK(std::abs(a[j] - ref) <= 1e-15 * mag);
    }
    if (v == nullptr) continue;
    v->exp_sum(coef.data(), expo.data(), coef.size(), t.data(), b.data(), n);
    CAPTURE(n);
    for (size_t j = 0; j < n; ++j) {
      double mag = 0.0;
      for (size_t k = 0; k < coef.size(); ++k) mag += std::abs(coef[k] * std::exp(expo[k] * t[j]));
      CHECK(std::abs(a[j] - b[j]) <= 1e-14 * mag);
    }
  }
}

TEST_CASE("exp_sum handles underflow and large arguments") {
  const auto* v = avx2_or_skip();
  if (v == nullptr) return;
  const double coef[1] = {1.0};
  const double expo[1] = {1.0};
  const double t[6] = {-800.0, -745.0, -700.0, 0.0, 700.0, 709.0};
  double out[6];
  v->exp_sum(coef, expo, 1, t, out, 6);
  for (int j = 0; j < 6; ++j) {
    const double ref = std::exp(t[j]);
    CAPTURE(t[j]);
    if (ref < 1e-300) {
      CHECK(out[j] <= 1e-300);
      CHECK(out[j] >= 0.0);
    } else {
      CHECK(std::abs(out[j] - ref) <= 1e-14 * ref);
    }
  }
}

TEST_CASE("branch sweep is the same under both tables") {
  if (avx2_or_skip() == nullptr) return;
  ContinuationConfig cfg;
  cfg.N = 3;
  cfg.M = 512;
  cfg.refinement_check = false;
  REQUIRE(simd::select_isa(Isa::Scalar));
  const BranchResult a = sweep_branch(cfg);
  REQUIRE(simd::select_isa(Isa::Avx2));
  const BranchResult b = sweep_branch(cfg);
  simd::reset_isa();
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].lambda == b.points[i].lambda);
    CHECK(std::abs(a.points[i].sup_norm - b.points[i].sup_norm) <= 1e-10);
  }
  CHECK(std::abs(a.lambda_star_estimate - b.lambda_star_estimate) <= 1e-6 * a.lambda_star_estimate);
  CHECK(a.classification == b.classification);
}

#include "mems/simd.hpp"

#include <immintrin.h>

#include <cmath>

namespace mems::simd {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double weighted_dot(const double* w, const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
    const __m256d a1 = _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(x + i + 4));
    acc0 = _mm256_fmadd_pd(a0, _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(a1, _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)), _mm256_loadu_pd(y + i),
                           acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

// mul then add, not fma, so results match the scalar table bit for bit
void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] = a * x[i] + y[i];
}

void reaction(const double* u, double lambda, double* f, double* q, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vl = _mm256_set1_pd(lambda);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d inv = _mm256_div_pd(one, _mm256_sub_pd(one, _mm256_loadu_pd(u + i)));
    const __m256d fi = _mm256_mul_pd(vl, _mm256_mul_pd(inv, inv));
    _mm256_storeu_pd(f + i, fi);
    if (q) _mm256_storeu_pd(q + i, _mm256_mul_pd(_mm256_mul_pd(two, fi), inv));
  }
  for (; i < n; ++i) {
    const double inv = 1.0 / (1.0 - u[i]);
    const double fi = lambda * (inv * inv);
    f[i] = fi;
    if (q) q[i] = 2.0 * fi * inv;
  }
}

// exp(x) for x in [-745, 709]: Cody-Waite reduction by ln 2, degree-13 Taylor on |r| <= ln2/2,
// scaling split in two so that subnormal results stay representable.
__m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-745.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  x = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double c[14] = {1.0,
                                   1.0,
                                   1.0 / 2,
                                   1.0 / 6,
                                   1.0 / 24,
                                   1.0 / 120,
                                   1.0 / 720,
                                   1.0 / 5040,
                                   1.0 / 40320,
                                   1.0 / 362880,
                                   1.0 / 3628800,
                                   1.0 / 39916800,
                                   1.0 / 479001600,
                                   1.0 / 6227020800.0};
  __m256d p = _mm256_set1_pd(c[13]);
  for (int j = 12; j >= 0; --j) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[j]));

  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m128i k1 = _mm_srai_epi32(ki, 1);
  const __m128i k2 = _mm_sub_epi32(ki, k1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52));
  const __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52));
  return _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);
}

void exp_sum(const double* coef, const double* expo, std::size_t terms, const double* t, double* out,
             std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vt = _mm256_loadu_pd(t + j);
    __m256d s = _mm256_setzero_pd();
    for (std::size_t k = 0; k < terms; ++k)
      s = _mm256_fmadd_pd(_mm256_set1_pd(coef[k]), exp_pd(_mm256_mul_pd(_mm256_set1_pd(expo[k]), vt)), s);
    _mm256_storeu_pd(out + j, s);
  }
  for (; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < terms; ++k) s += coef[k] * std::exp(expo[k] * t[j]);
    out[j] = s;
  }
}

const KernelTable table{Isa::Avx2, "avx2", weighted_dot, axpy, reaction, exp_sum};

}  // namespace

const KernelTable* avx2_kernels() { return &table; }

}  // namespace mems::simd

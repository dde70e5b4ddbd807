#include "mems/simd.hpp"

#include <cmath>

namespace mems::simd {
namespace {

double weighted_dot(const double* w, const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + y[i];
}

void reaction(const double* u, double lambda, double* f, double* q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / (1.0 - u[i]);
    const double fi = lambda * (inv * inv);
    f[i] = fi;
    if (q) q[i] = 2.0 * fi * inv;
  }
}

void exp_sum(const double* coef, const double* expo, std::size_t terms, const double* t, double* out,
             std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < terms; ++k) s += coef[k] * std::exp(expo[k] * t[j]);
    out[j] = s;
  }
}

const KernelTable table{Isa::Scalar, "scalar", weighted_dot, axpy, reaction, exp_sum};

}  // namespace

const KernelTable& scalar_kernels() { return table; }

}  // namespace mems::simd

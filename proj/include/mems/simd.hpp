#pragma once

#include <cstddef>

namespace mems::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i w_i x_i y_i
  double (*weighted_dot)(const double* w, const double* x, const double* y, std::size_t n);
  // y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // f_i = lambda / (1 - u_i)^2 and, when q is non-null, q_i = 2 lambda / (1 - u_i)^3
  void (*reaction)(const double* u, double lambda, double* f, double* q, std::size_t n);
  // out_j = sum_k c_k exp(p_k t_j)
  void (*exp_sum)(const double* coef, const double* expo, std::size_t terms, const double* t, double* out,
                  std::size_t n);
};

const KernelTable& scalar_kernels();
// Null when the AVX2 translation unit was not built.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);

// Best table supported by the running CPU, unless overridden.
const KernelTable& kernels();

// Returns false (and keeps the current table) when the CPU or build lacks the ISA.
bool select_isa(Isa isa);
void reset_isa();

}  // namespace mems::simd

#include "mems/simd.hpp"

#include <atomic>

namespace mems::simd {

#ifndef MEMS_WITH_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

const KernelTable* detect() {
  if (cpu_supports(Isa::Avx2)) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

bool select_isa(Isa isa) {
  if (!cpu_supports(isa)) return false;
  active().store(isa == Isa::Avx2 ? avx2_kernels() : &scalar_kernels(), std::memory_order_release);
  return true;
}

void reset_isa() { active().store(detect(), std::memory_order_release); }

}  // namespace mems::simd

#include "cbandit/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cbandit::simd {

#ifdef CBANDIT_HAVE_AVX2
const KernelTable* avx2_kernels_impl();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CBANDIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("CBANDIT_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  current().store(isa_supported(isa) ? isa : Isa::Scalar, std::memory_order_relaxed);
}

const KernelTable* avx2_kernels() {
#ifdef CBANDIT_HAVE_AVX2
  return cpu_has_avx2() ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  if (active_isa() == Isa::Avx2) {
    if (const KernelTable* t = avx2_kernels()) return *t;
  }
  return scalar_kernels();
}

}  // namespace cbandit::simd

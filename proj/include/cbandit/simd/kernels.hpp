#pragma once

// Data-parallel inner loops used by the solvers. Every kernel has a scalar
// reference implementation; an AVX2+FMA variant is selected at runtime when
// the CPU supports it. Set CBANDIT_SIMD=scalar to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace cbandit::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// ISA used by the dispatching entry points below.
Isa active_isa();

/// Override the dispatch choice (tests use this to pin a variant). Requesting
/// an ISA the CPU lacks falls back to Scalar.
void set_active_isa(Isa isa);

bool isa_supported(Isa isa);

/// Kernel table; one instance per ISA.
struct KernelTable {
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum x_i y_i
  double (*dot)(const double* x, const double* y, std::size_t n);
  // out = P x, P row-major n x n
  void (*gemv)(const double* P, const double* x, double* out, std::size_t n);
  // P -= c * b b^T, P row-major n x n
  void (*rank1_update)(double* P, const double* b, double c, std::size_t n);
  // P *= s
  void (*scale)(double* P, double s, std::size_t n);
  // value = sum_i weight_i z_i / (floor + slope w_i);
  // grad_i = -weight_i z_i slope / (floor + slope w_i)^2 (skipped if grad null)
  double (*is_ratio_sum)(const double* weight, const double* z, const double* w,
                         double floor, double slope, double* grad, std::size_t n);
};

const KernelTable& scalar_kernels();
/// Null when the build has no AVX2 variant.
const KernelTable* avx2_kernels();

const KernelTable& kernels();

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return kernels().dot(x.data(), y.data(), x.size());
}

}  // namespace cbandit::simd

#include "cbandit/simd/kernels.hpp"

namespace cbandit::simd {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void gemv_scalar(const double* P, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = dot_scalar(P + i * n, x, n);
}

void rank1_scalar(double* P, const double* b, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double cb = c * b[i];
    double* row = P + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] -= cb * b[j];
  }
}

void scale_scalar(double* P, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) P[i] *= s;
}

double is_ratio_scalar(const double* weight, const double* z, const double* w,
                       double floor, double slope, double* grad, std::size_t n) {
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double den = floor + slope * w[i];
    const double q = weight[i] * z[i] / den;
    v += q;
    if (grad) grad[i] = -q * slope / den;
  }
  return v;
}

constexpr KernelTable kScalar{axpy_scalar,  dot_scalar,   gemv_scalar,
                              rank1_scalar, scale_scalar, is_ratio_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace cbandit::simd

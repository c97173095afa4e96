// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "cbandit/simd/kernels.hpp"

namespace cbandit::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void gemv_avx2(const double* P, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = dot_avx2(P + i * n, x, n);
}

void rank1_avx2(double* P, const double* b, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d ncb = _mm256_set1_pd(-c * b[i]);
    double* row = P + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d r = _mm256_loadu_pd(row + j);
      r = _mm256_fmadd_pd(ncb, _mm256_loadu_pd(b + j), r);
      _mm256_storeu_pd(row + j, r);
    }
    const double cb = c * b[i];
    for (; j < n; ++j) row[j] -= cb * b[j];
  }
}

void scale_avx2(double* P, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(P + i, _mm256_mul_pd(vs, _mm256_loadu_pd(P + i)));
  for (; i < n; ++i) P[i] *= s;
}

double is_ratio_avx2(const double* weight, const double* z, const double* w,
                     double floor, double slope, double* grad, std::size_t n) {
  const __m256d vf = _mm256_set1_pd(floor);
  const __m256d vs = _mm256_set1_pd(slope);
  const __m256d vns = _mm256_set1_pd(-slope);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d den = _mm256_fmadd_pd(vs, _mm256_loadu_pd(w + i), vf);
    const __m256d q =
        _mm256_div_pd(_mm256_mul_pd(_mm256_loadu_pd(weight + i), _mm256_loadu_pd(z + i)), den);
    acc = _mm256_add_pd(acc, q);
    if (grad) _mm256_storeu_pd(grad + i, _mm256_div_pd(_mm256_mul_pd(q, vns), den));
  }
  double v = hsum(acc);
  for (; i < n; ++i) {
    const double den = floor + slope * w[i];
    const double q = weight[i] * z[i] / den;
    v += q;
    if (grad) grad[i] = -q * slope / den;
  }
  return v;
}

constexpr KernelTable kAvx2{axpy_avx2,  dot_avx2,   gemv_avx2,
                            rank1_avx2, scale_avx2, is_ratio_avx2};

}  // namespace

const KernelTable* avx2_kernels_impl() { return &kAvx2; }

}  // namespace cbandit::simd

// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma; callers must check cpu support before dispatching here.

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "stfrac/kernels.hpp"

namespace stfrac::kernels {

namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
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

void axpy_diff_avx2(double a, const double* x, const double* y, double* acc,
                    std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    __m256d v = _mm256_loadu_pd(acc + i);
    v = _mm256_fmadd_pd(va, d, v);
    _mm256_storeu_pd(acc + i, v);
  }
  for (; i < n; ++i) acc[i] += a * (x[i] - y[i]);
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i)));
  }
  __m128d lo = _mm256_castpd256_pd128(vm);
  __m128d hi = _mm256_extractf128_pd(vm, 1);
  lo = _mm_max_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

constexpr KernelTable kAvx2{"avx2", dot_avx2, axpy_avx2, axpy_diff_avx2,
                            max_abs_avx2};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace stfrac::kernels

#endif  // __x86_64__

// NEON kernel variants (aarch64; NEON is baseline there, no runtime check).

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "stfrac/kernels.hpp"

namespace stfrac::kernels {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_diff_neon(double a, const double* x, const double* y, double* acc,
                    std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    float64x2_t v = vld1q_f64(acc + i);
    v = vfmaq_f64(v, va, d);
    vst1q_f64(acc + i, v);
  }
  for (; i < n; ++i) acc[i] += a * (x[i] - y[i]);
}

double max_abs_neon(const double* x, std::size_t n) {
  float64x2_t vm = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vm = vmaxq_f64(vm, vabsq_f64(vld1q_f64(x + i)));
  }
  double m = vmaxvq_f64(vm);
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

constexpr KernelTable kNeon{"neon", dot_neon, axpy_neon, axpy_diff_neon,
                            max_abs_neon};

}  // namespace

const KernelTable& neon_table() { return kNeon; }

}  // namespace stfrac::kernels

#endif  // __aarch64__

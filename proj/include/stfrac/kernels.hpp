#pragma once

// Data-parallel inner loops used by the dense linear algebra, the
// Grunwald convolutions and the Monte Carlo reductions.  Every kernel has
// a scalar reference implementation plus SIMD variants (AVX2+FMA on
// x86-64, NEON on aarch64) selected once at startup.  SIMD variants may
// reassociate sums, so results can differ from scalar by a few ulps; the
// equivalence tests pin that down.

#include <cstddef>
#include <string>
#include <vector>

namespace stfrac::kernels {

using dot_fn = double (*)(const double*, const double*, std::size_t);
using axpy_fn = void (*)(double, const double*, double*, std::size_t);
using axpy_diff_fn = void (*)(double, const double*, const double*, double*,
                              std::size_t);
using max_abs_fn = double (*)(const double*, std::size_t);

struct KernelTable {
  const char* name;
  dot_fn dot;            // sum_i x_i y_i
  axpy_fn axpy;          // y += a*x
  axpy_diff_fn axpy_diff;  // acc += a*(x - y)
  max_abs_fn max_abs;    // max_i |x_i|
};

// Table picked at startup from CPU features; the STFRAC_KERNELS
// environment variable ("scalar", "avx2", "neon") forces a variant.
const KernelTable& active();

const KernelTable& scalar_table();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void axpy_diff(double a, const double* x, const double* y, double* acc,
                      std::size_t n) {
  active().axpy_diff(a, x, y, acc, n);
}
inline double max_abs(const double* x, std::size_t n) {
  return active().max_abs(x, n);
}

// Correlation against a lower-triangular Toeplitz band: for each row i,
//   out[i] = sum_{k=0}^{min(i+shift, nw-1)} w[k] * f[i+shift-k]
// with f indexed over [0, n) and out-of-range samples treated as zero
// (the zero-extension convention).  `shift` is the Grunwald shift (0 or 1).
// Runs on the dispatched dot kernel via a reversed copy of f.
void shifted_correlation(const double* w, std::size_t nw, const double* f,
                         double* out, std::size_t n, int shift);

// Neumaier compensated sum; used where partition-invariant accumulation
// is part of the contract (Monte Carlo reductions).
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v);
  void merge(const CompensatedSum& other);
  double value() const { return sum + comp; }
};

}  // namespace stfrac::kernels

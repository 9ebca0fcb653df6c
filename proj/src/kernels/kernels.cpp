#include "stfrac/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace stfrac::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_diff_scalar(double a, const double* x, const double* y, double* acc,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += a * (x[i] - y[i]);
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

constexpr KernelTable kScalar{"scalar", dot_scalar, axpy_scalar,
                              axpy_diff_scalar, max_abs_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

#if defined(__x86_64__)
const KernelTable& avx2_table();  // kernels_avx2.cpp
namespace {
bool avx2_usable() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
}  // namespace
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();  // kernels_neon.cpp
#endif

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&kScalar};
#if defined(__x86_64__)
  if (avx2_usable()) out.push_back(&avx2_table());
#endif
#if defined(__aarch64__)
  out.push_back(&neon_table());
#endif
  return out;
}

namespace {
const KernelTable* select() {
  if (const char* force = std::getenv("STFRAC_KERNELS")) {
    for (const KernelTable* t : available_tables())
      if (std::strcmp(force, t->name) == 0) return t;
    // Unknown or unavailable name: fall through to auto selection.
  }
  const auto tables = available_tables();
  return tables.back();  // best available; scalar if nothing else
}
}  // namespace

const KernelTable& active() {
  static const KernelTable* chosen = select();
  return *chosen;
}

void shifted_correlation(const double* w, std::size_t nw, const double* f,
                         double* out, std::size_t n, int shift) {
  // Reverse f so each output row is a contiguous dot product:
  //   out[i] = sum_k w[k] f[i+shift-k] = dot(w, fr + n-1-(i+shift), len)
  // where fr[j] = f[n-1-j] and len clips both the weight count and the
  // zero extension below index 0.
  std::vector<double> fr(n);
  for (std::size_t j = 0; j < n; ++j) fr[j] = f[n - 1 - j];
  const auto& k = active();
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t top = static_cast<std::ptrdiff_t>(i) + shift;
    // k ranges over  [max(0, top-(n-1)), min(top, nw-1)]
    const std::ptrdiff_t k0 =
        std::max<std::ptrdiff_t>(0, top - static_cast<std::ptrdiff_t>(n) + 1);
    const std::ptrdiff_t k1 =
        std::min<std::ptrdiff_t>(top, static_cast<std::ptrdiff_t>(nw) - 1);
    if (k1 < k0) {
      out[i] = 0.0;
      continue;
    }
    // f index i+shift-k runs from top-k0 down to top-k1; in fr that is the
    // contiguous range starting at n-1-(top-k0).
    const double* frp = fr.data() + (static_cast<std::ptrdiff_t>(n) - 1 -
                                     (top - k0));
    out[i] = k.dot(w + k0, frp, static_cast<std::size_t>(k1 - k0 + 1));
  }
}

void CompensatedSum::add(double v) {
  const double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

void CompensatedSum::merge(const CompensatedSum& other) {
  add(other.sum);
  comp += other.comp;
}

}  // namespace stfrac::kernels

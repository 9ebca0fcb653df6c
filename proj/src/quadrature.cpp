#include "stfrac/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace stfrac::quad {

namespace {

// Newton iteration on Legendre polynomials (classic gauleg).
GaussRule make_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

double gl_fixed(const std::function<double(double)>& f, double a, double b,
                int n) {
  const GaussRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * s;
}

namespace {

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double tol, int depth, int max_depth) {
  const double coarse = gl_fixed(f, a, b, 7);
  const double fine = gl_fixed(f, a, b, 15);
  if (std::fabs(fine - coarse) <= tol || depth >= max_depth) return fine;
  const double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         adaptive_rec(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  return adaptive_rec(f, a, b, abs_tol, 0, max_depth);
}

double adaptive_gl_panels(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints,
                          double abs_tol_per_panel, int max_depth) {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("adaptive_gl_panels: need >= 2 breakpoints");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += adaptive_gl(f, breakpoints[i], breakpoints[i + 1],
                         abs_tol_per_panel, max_depth);
  return total;
}

}  // namespace stfrac::quad

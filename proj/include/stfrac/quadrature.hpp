#pragma once

#include <functional>
#include <vector>

namespace stfrac::quad {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Integral of f over [a,b] with the n-point rule.
double gl_fixed(const std::function<double(double)>& f, double a, double b,
                int n = 15);

// Adaptive bisection driven by a GL7/GL15 error estimate.  `abs_tol` is an
// absolute tolerance for the whole interval.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_depth = 44);

// Same, integrating panel by panel between sorted breakpoints.
double adaptive_gl_panels(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints,
                          double abs_tol_per_panel, int max_depth = 44);

}  // namespace stfrac::quad

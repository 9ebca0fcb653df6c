#pragma once

// Discrete Riemann-Liouville calculus on a uniform grid and assembly of
// the killed stable generator with the zero-exterior Dirichlet convention:
// the operator always acts on the zero extension of interior node values,
// so boundary nodes are structural zeros, never unknowns.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stfrac/grid.hpp"
#include "stfrac/linalg.hpp"
#include "stfrac/specfun.hpp"

namespace stfrac {

enum class Side { left, right };

// Coefficient field on the domain; constant fields keep assembly on the
// Toeplitz fast path.
class CoefficientField {
 public:
  CoefficientField(double v) : constant_(true), value_(v) {}  // NOLINT(implicit)
  explicit CoefficientField(std::function<double(double)> f)
      : constant_(false), fn_(std::move(f)) {}

  bool constant() const { return constant_; }
  double operator()(double x) const { return constant_ ? value_ : fn_(x); }
  double constant_value() const { return value_; }

 private:
  bool constant_;
  double value_ = 0.0;
  std::function<double(double)> fn_;
};

// (alpha, drift a, left weight b(x), right weight c(x)) defining the
// killed generator
//   L f = -a f' + b(x) D^alpha_[L,x] f + c(x) D^alpha_[x,R] f     (1<alpha<=2)
//   L f = -b(x) D^alpha_[L,x] f - c(x) D^alpha_[x,R] f            (0<alpha<1)
// on the zero extension.  For 0<alpha<1 the domain is regular only when
// b>0, c>0 and a=0, and the drift is structurally absent.
struct StableOperatorSpec {
  StabilityIndex alpha;
  double drift = 0.0;
  CoefficientField left_weight;
  CoefficientField right_weight;

  bool constant_coefficients() const {
    return left_weight.constant() && right_weight.constant();
  }
};

// Dense discretization of the killed generator plus a provenance record.
struct GeneratorMatrix {
  DenseMatrix matrix;
  Grid1D grid;
  std::string scheme;                  // e.g. "grunwald-shift1"
  double alpha = 0.0;
  double drift = 0.0;
  bool constant_coefficients = false;
  std::vector<std::string> warnings;   // regularity notes from assembly
};

// w_k = (-1)^k binom(alpha, k) via w_0 = 1, w_k = w_{k-1} (k-1-alpha)/k.
std::vector<double> grunwald_weights(const StabilityIndex& alpha, int count);

// Discrete I^alpha f by product-rectangle quadrature of the convolution
// kernel; first order for Lipschitz f.  alpha may be any positive real.
std::vector<double> rl_integral(std::span<const double> f, double alpha,
                                Side side, const Grid1D& grid);

// Shifted Grunwald approximation of D^alpha_[L,x] or D^alpha_[x,R] on the
// zero extension: shift 1 for alpha in (1,2], shift 0 for alpha in (0,1).
// First-order accurate for C^2 functions vanishing at the near boundary.
std::vector<double> rl_derivative(std::span<const double> f,
                                  const StabilityIndex& alpha, Side side,
                                  const Grid1D& grid);

// Assemble the killed generator matrix.  Throws if alpha in (0,1) comes
// with a nonzero drift; appends a warning to the provenance record when the
// regularity condition (b>0, c>0) fails on the grid.
GeneratorMatrix assemble_killed_generator(const StableOperatorSpec& spec,
                                          const Grid1D& grid);

// Plain-text matrix-market export for external inspection.
void export_matrix_market(const GeneratorMatrix& gen, std::ostream& os);

}  // namespace stfrac

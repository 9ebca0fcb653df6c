#include "stfrac/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "stfrac/kernels.hpp"

namespace stfrac {

std::vector<double> grunwald_weights(const StabilityIndex& alpha, int count) {
  if (count < 1) throw std::invalid_argument("grunwald_weights: count < 1");
  const double a = alpha.value();
  std::vector<double> w(count);
  w[0] = 1.0;
  for (int k = 1; k < count; ++k) w[k] = w[k - 1] * (k - 1 - a) / k;
  return w;
}

namespace {

std::vector<double> reversed(std::span<const double> v) {
  return std::vector<double>(v.rbegin(), v.rend());
}

// Left-sided correlation with kernel q and Grunwald shift; the right side
// is the same operation on the reversed grid function.
std::vector<double> apply_kernel(std::span<const double> q,
                                 std::span<const double> f, Side side,
                                 int shift) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  if (side == Side::left) {
    kernels::shifted_correlation(q.data(), q.size(), f.data(), out.data(), n,
                                 shift);
  } else {
    const std::vector<double> fr = reversed(f);
    kernels::shifted_correlation(q.data(), q.size(), fr.data(), out.data(), n,
                                 shift);
    std::reverse(out.begin(), out.end());
  }
  return out;
}

}  // namespace

std::vector<double> rl_integral(std::span<const double> f, double alpha,
                                Side side, const Grid1D& grid) {
  if (!(alpha > 0.0))
    throw std::domain_error("rl_integral: alpha must be positive");
  if (static_cast<int>(f.size()) != grid.n)
    throw std::invalid_argument("rl_integral: size mismatch");
  // Product rectangle: f piecewise constant on cells with interior right
  // endpoints, kernel integrated exactly:
  //   I(x_i) = dx^alpha/Gamma(alpha+1) sum_k [(k+1)^alpha - k^alpha] f_{i-k}
  const int n = grid.n;
  std::vector<double> q(n);
  for (int k = 0; k < n; ++k)
    q[k] = std::pow(k + 1.0, alpha) - std::pow(static_cast<double>(k), alpha);
  std::vector<double> out = apply_kernel(q, f, side, 0);
  const double scale =
      std::pow(grid.dx, alpha) * std::exp(-std::lgamma(alpha + 1.0));
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> rl_derivative(std::span<const double> f,
                                  const StabilityIndex& alpha, Side side,
                                  const Grid1D& grid) {
  if (static_cast<int>(f.size()) != grid.n)
    throw std::invalid_argument("rl_derivative: size mismatch");
  const double a = alpha.value();
  const int shift = a > 1.0 ? 1 : 0;
  const std::vector<double> w = grunwald_weights(alpha, grid.n + 2);
  std::vector<double> out = apply_kernel(w, f, side, shift);
  const double scale = std::pow(grid.dx, -a);
  for (double& v : out) v *= scale;
  return out;
}

GeneratorMatrix assemble_killed_generator(const StableOperatorSpec& spec,
                                          const Grid1D& grid) {
  const double a = spec.alpha.value();
  const int n = grid.n;
  const int shift = a > 1.0 ? 1 : 0;
  GeneratorMatrix gen{DenseMatrix(n, n),
                      grid,
                      shift == 1 ? "grunwald-shift1" : "grunwald-shift0",
                      a,
                      spec.drift,
                      spec.constant_coefficients(),
                      {}};

  if (a < 1.0) {
    if (spec.drift != 0.0)
      throw std::invalid_argument(
          "assemble_killed_generator: drift is not admissible for alpha in "
          "(0,1)");
    double bmin = spec.left_weight(grid.node(0));
    double cmin = spec.right_weight(grid.node(0));
    for (int i = 1; i < n; ++i) {
      bmin = std::min(bmin, spec.left_weight(grid.node(i)));
      cmin = std::min(cmin, spec.right_weight(grid.node(i)));
    }
    if (!(bmin > 0.0) || !(cmin > 0.0))
      gen.warnings.push_back(
          "regularity requires b>0 and c>0 on the domain for alpha in (0,1)");
  }

  const std::vector<double> w = grunwald_weights(spec.alpha, n + 2);
  const double scale = std::pow(grid.dx, -a);
  // For 1<alpha<=2 the generator is -a d/dx + b D^a_L + c D^a_R; for
  // 0<alpha<1 it is -b D^a_L - c D^a_R (killed generator sign convention).
  const double fsign = a > 1.0 ? 1.0 : -1.0;
  const double inv2dx = 1.0 / (2.0 * grid.dx);

  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    const double bi = fsign * spec.left_weight(x) * scale;
    const double ci = fsign * spec.right_weight(x) * scale;
    double* row = gen.matrix.row(i);
    // left derivative: column j contributes w_{i-j+shift}
    for (int j = std::max(0, i + shift - (n + 1)); j <= std::min(n - 1, i + shift); ++j)
      row[j] += bi * w[i - j + shift];
    // right derivative: column j contributes w_{j-i+shift}
    for (int j = std::max(0, i - shift); j < n; ++j)
      row[j] += ci * w[j - i + shift];
    if (shift == 1 && spec.drift != 0.0) {
      // second-order central difference for the drift term
      if (i + 1 < n) row[i + 1] -= spec.drift * inv2dx;
      if (i - 1 >= 0) row[i - 1] += spec.drift * inv2dx;
    }
  }
  return gen;
}

void export_matrix_market(const GeneratorMatrix& gen, std::ostream& os) {
  const DenseMatrix& m = gen.matrix;
  std::size_t nnz = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) ++nnz;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << "% killed stable generator, scheme=" << gen.scheme
     << " alpha=" << gen.alpha << "\n";
  os << m.rows() << " " << m.cols() << " " << nnz << "\n";
  os.precision(17);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) os << i + 1 << " " << j + 1 << " " << m(i, j) << "\n";
}

}  // namespace stfrac

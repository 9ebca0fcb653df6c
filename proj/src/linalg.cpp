#include "stfrac/linalg.hpp"

#include <cmath>

#include "stfrac/grid.hpp"
#include "stfrac/kernels.hpp"

namespace stfrac {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::matvec(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("matvec: size mismatch");
  std::vector<double> y(rows_);
  for (int i = 0; i < rows_; ++i)
    y[i] = kernels::dot(row(i), x.data(), static_cast<std::size_t>(cols_));
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void DenseMatrix::add_scaled(double a, const DenseMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_)
    throw std::invalid_argument("add_scaled: shape mismatch");
  kernels::axpy(a, other.data_.data(), data_.data(), data_.size());
}

LuFactorization LuFactorization::compute(const DenseMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("LuFactorization: matrix must be square");
  LuFactorization f;
  f.lu_ = a;
  const int n = a.rows();
  f.perm_.resize(n);
  for (int i = 0; i < n; ++i) f.perm_[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(f.lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(f.lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0)
      throw std::runtime_error("LuFactorization: singular matrix");
    if (piv != k) {
      std::swap(f.perm_[k], f.perm_[piv]);
      for (int j = 0; j < n; ++j) std::swap(f.lu_(k, j), f.lu_(piv, j));
    }
    const double inv = 1.0 / f.lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double m = f.lu_(i, k) * inv;
      f.lu_(i, k) = m;
      if (m != 0.0)
        kernels::axpy(-m, f.lu_.row(k) + k + 1, f.lu_.row(i) + k + 1,
                      static_cast<std::size_t>(n - k - 1));
    }
  }
  return f;
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const int n = size();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("LuFactorization::solve: size mismatch");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
  // Ly = Pb (unit diagonal)
  for (int i = 1; i < n; ++i)
    x[i] -= kernels::dot(lu_.row(i), x.data(), static_cast<std::size_t>(i));
  // Ux = y
  for (int i = n - 1; i >= 0; --i) {
    const double s = kernels::dot(lu_.row(i) + i + 1, x.data() + i + 1,
                                  static_cast<std::size_t>(n - i - 1));
    x[i] = (x[i] - s) / lu_(i, i);
  }
  return x;
}

void LuFactorization::solve_inplace(std::vector<double>& b) const {
  b = solve(b);
}

double SolutionField::max_abs() const {
  return kernels::max_abs(values.data(), values.size());
}

}  // namespace stfrac

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace stfrac {

// Row-major dense matrix.  Problem sizes are desk scale (n <= 4096), so
// dense storage and O(n^3) factorization are acceptable throughout.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("DenseMatrix: negative size");
  }

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

  const std::vector<double>& data() const { return data_; }

  std::vector<double> matvec(std::span<const double> x) const;

  DenseMatrix transpose() const;

  // this += a * other
  void add_scaled(double a, const DenseMatrix& other);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// PA = LU with partial pivoting; L unit lower triangular, stored packed.
class LuFactorization {
 public:
  static LuFactorization compute(const DenseMatrix& a);

  // Solve A x = b.
  std::vector<double> solve(std::span<const double> b) const;
  void solve_inplace(std::vector<double>& b) const;

  int size() const { return lu_.rows(); }

 private:
  DenseMatrix lu_;
  std::vector<int> perm_;
};

}  // namespace stfrac

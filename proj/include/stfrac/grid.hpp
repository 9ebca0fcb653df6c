#pragma once

#include <stdexcept>
#include <vector>

namespace stfrac {

// Uniform interior mesh of a bounded interval (left, right).  Interior
// nodes are x_i = left + (i+1)*dx for i = 0..n-1; the boundary nodes and
// everything beyond carry the value 0 (zero-extension convention), so they
// are never unknowns.
struct Grid1D {
  double left;
  double right;
  int n;   // interior node count
  double dx;

  Grid1D(double left_, double right_, int n_)
      : left(left_), right(right_), n(n_), dx((right_ - left_) / (n_ + 1)) {
    if (!(left < right)) throw std::invalid_argument("Grid1D: left >= right");
    if (n < 1) throw std::invalid_argument("Grid1D: need at least one node");
  }

  double node(int i) const { return left + (i + 1) * dx; }

  std::vector<double> nodes() const {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = node(i);
    return x;
  }

  bool operator==(const Grid1D& o) const {
    return left == o.left && right == o.right && n == o.n;
  }
};

struct TimeGrid {
  double t_end;
  int steps;
  double dt;

  TimeGrid(double t_end_, int steps_)
      : t_end(t_end_), steps(steps_), dt(t_end_ / steps_) {
    if (!(t_end > 0)) throw std::invalid_argument("TimeGrid: t_end <= 0");
    if (steps < 1) throw std::invalid_argument("TimeGrid: steps < 1");
  }

  double time(int k) const { return k * dt; }
};

// Node values of u(.,t) at one time stamp.
struct SolutionField {
  Grid1D grid;
  std::vector<double> values;
  double time = 0.0;

  SolutionField(Grid1D g, std::vector<double> v, double t)
      : grid(g), values(std::move(v)), time(t) {
    if (static_cast<int>(values.size()) != grid.n)
      throw std::invalid_argument("SolutionField: size mismatch");
  }

  static SolutionField zero(const Grid1D& g, double t = 0.0) {
    return SolutionField(g, std::vector<double>(g.n, 0.0), t);
  }

  template <class F>
  static SolutionField sample(const Grid1D& g, F&& f, double t = 0.0) {
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = f(g.node(i));
    return SolutionField(g, std::move(v), t);
  }

  double max_abs() const;
};

}  // namespace stfrac

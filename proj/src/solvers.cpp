#include "stfrac/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stfrac/kernels.hpp"
#include "stfrac/linalg.hpp"
#include "stfrac/quadrature.hpp"

namespace stfrac {

namespace {

void check_compatible(const GeneratorMatrix& gen, const SolutionField& f0) {
  if (!(f0.grid == gen.grid))
    throw std::invalid_argument("solver: field and generator grids differ");
}

std::vector<double> sample_forcing(const Forcing& g, const Grid1D& grid,
                                   double t) {
  std::vector<double> v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = g(grid.node(i), t);
  return v;
}

// I - dt A
LuFactorization factor_step_matrix(const GeneratorMatrix& gen, double dt) {
  DenseMatrix m = DenseMatrix::identity(gen.matrix.rows());
  m.add_scaled(-dt, gen.matrix);
  return LuFactorization::compute(m);
}

}  // namespace

std::vector<SolutionField> implicit_euler_solve(const GeneratorMatrix& gen,
                                                const SolutionField& f0,
                                                const Forcing& forcing,
                                                const TimeGrid& tg) {
  check_compatible(gen, f0);
  const LuFactorization lu = factor_step_matrix(gen, tg.dt);
  std::vector<SolutionField> out;
  out.reserve(tg.steps + 1);
  out.push_back(f0);
  out.back().time = 0.0;
  std::vector<double> u = f0.values;
  for (int k = 1; k <= tg.steps; ++k) {
    if (forcing) {
      const std::vector<double> g = sample_forcing(forcing, gen.grid, tg.time(k));
      kernels::axpy(tg.dt, g.data(), u.data(), u.size());
    }
    u = lu.solve(u);
    out.emplace_back(gen.grid, u, tg.time(k));
  }
  return out;
}

SolutionField duhamel_solution(const GeneratorMatrix& gen,
                               const SolutionField& f0, const Forcing& forcing,
                               const TimeGrid& tg) {
  check_compatible(gen, f0);
  const LuFactorization lu = factor_step_matrix(gen, tg.dt);
  const int K = tg.steps;
  const double T = tg.t_end;

  // P_T f0 as K one-step solves.
  std::vector<double> hom = f0.values;
  for (int k = 0; k < K; ++k) hom = lu.solve(hom);
  if (!forcing) return SolutionField(gen.grid, std::move(hom), T);

  // Trapezoid over s: dt * sum''_k P^k g(., T - t_k), evaluated by Horner:
  // acc_k = w_k g_k + P acc_{k+1}.
  std::vector<double> acc(gen.grid.n, 0.0);
  for (int k = K; k >= 0; --k) {
    if (k < K) acc = lu.solve(acc);
    const double wk = (k == 0 || k == K) ? 0.5 : 1.0;
    const std::vector<double> g =
        sample_forcing(forcing, gen.grid, T - tg.time(k));
    kernels::axpy(wk, g.data(), acc.data(), acc.size());
  }
  kernels::axpy(tg.dt, acc.data(), hom.data(), hom.size());
  return SolutionField(gen.grid, std::move(hom), T);
}

std::vector<SolutionField> l1_caputo_solve(const FracOrder& beta,
                                           const GeneratorMatrix& gen,
                                           const SolutionField& f0,
                                           const TimeGrid& tg) {
  check_compatible(gen, f0);
  const double b = beta.value();
  // (I - eta A) u^{k+1} = u^k - sum_{j>=1} a_j (u^{k+1-j} - u^{k-j}),
  // eta = Gamma(2-beta) dt^beta, a_j = (j+1)^{1-beta} - j^{1-beta}.
  // At beta = 1 every a_j vanishes and eta = dt: exactly implicit Euler.
  const double eta = std::tgamma(2.0 - b) * std::pow(tg.dt, b);
  DenseMatrix m = DenseMatrix::identity(gen.matrix.rows());
  m.add_scaled(-eta, gen.matrix);
  const LuFactorization lu = LuFactorization::compute(m);

  std::vector<double> aw(tg.steps);
  for (int j = 0; j < tg.steps; ++j)
    aw[j] = std::pow(j + 1.0, 1.0 - b) - std::pow(static_cast<double>(j), 1.0 - b);

  std::vector<SolutionField> out;
  out.reserve(tg.steps + 1);
  out.push_back(f0);
  out.back().time = 0.0;
  const std::size_t n = f0.values.size();
  for (int k = 0; k < tg.steps; ++k) {
    std::vector<double> rhs = out[k].values;
    if (b < 1.0) {
      for (int j = 1; j <= k; ++j)
        kernels::axpy_diff(-aw[j], out[k + 1 - j].values.data(),
                           out[k - j].values.data(), rhs.data(), n);
    }
    out.emplace_back(gen.grid, lu.solve(rhs), tg.time(k + 1));
  }
  return out;
}

// --- subordination -----------------------------------------------------------

namespace {

struct VecQuad {
  const std::function<std::vector<double>(double)>* semigroup;
  const FracOrder* beta;
  double t;
  int dim;
  int max_depth;

  std::vector<double> fixed(double a, double b, int npts) const {
    const quad::GaussRule& r = quad::gauss_legendre(npts);
    std::vector<double> acc(dim, 0.0);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < npts; ++i) {
      const double w = mid + half * r.nodes[i];
      const double hw = specfun::inv_subordinator_density(*beta, w, t);
      if (hw == 0.0) continue;
      const std::vector<double> u = (*semigroup)(w);
      kernels::axpy(half * r.weights[i] * hw, u.data(), acc.data(), dim);
    }
    return acc;
  }

  void integrate(double a, double b, double tol, int depth,
                 std::vector<double>& out) const {
    const std::vector<double> coarse = fixed(a, b, 7);
    const std::vector<double> fine = fixed(a, b, 15);
    double err = 0.0;
    for (int i = 0; i < dim; ++i)
      err = std::max(err, std::fabs(fine[i] - coarse[i]));
    if (err <= tol || depth >= max_depth) {
      for (int i = 0; i < dim; ++i) out[i] += fine[i];
      return;
    }
    const double m = 0.5 * (a + b);
    integrate(a, m, 0.5 * tol, depth + 1, out);
    integrate(m, b, 0.5 * tol, depth + 1, out);
  }
};

}  // namespace

std::vector<double> subordinate_semigroup(
    const FracOrder& beta,
    const std::function<std::vector<double>(double)>& semigroup, int dim,
    double t, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("subordination: t must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("subordination: tol must be > 0");
  if (beta.classical()) return semigroup(t);

  // Truncation: dropped tail of h carries at most half the budget; the
  // quadrature gets the other half, both scaled by ||f||.
  const double scale = std::max(
      kernels::max_abs(semigroup(0.0).data(), static_cast<std::size_t>(dim)),
      1e-300);
  const double W =
      specfun::inv_subordinator_tail_cutoff(beta, t, 0.5 * tol);

  // Log-spaced panels toward w = 0 where h and the semigroup vary fastest.
  std::vector<double> pts{0.0};
  for (int m = 20; m >= 1; --m) pts.push_back(W * std::ldexp(1.0, -m));
  pts.push_back(W);

  VecQuad q{&semigroup, &beta, t, dim, 18};
  std::vector<double> out(dim, 0.0);
  const double per_panel = 0.5 * tol * scale / static_cast<double>(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    q.integrate(pts[i], pts[i + 1], per_panel, 0, out);
  return out;
}

namespace {

// One fine implicit-Euler run cached at every step; values at quadrature
// nodes by linear interpolation in w.
class CachedPropagation {
 public:
  CachedPropagation(const GeneratorMatrix& gen, std::vector<double> q,
                    double horizon, int steps)
      : dw_(horizon / steps) {
    const LuFactorization lu = factor_step_matrix(gen, dw_);
    snaps_.reserve(steps + 1);
    snaps_.push_back(std::move(q));
    for (int k = 0; k < steps; ++k) snaps_.push_back(lu.solve(snaps_.back()));
  }

  std::vector<double> at(double w) const {
    if (w <= 0.0) return snaps_.front();
    const double s = w / dw_;
    const auto k = static_cast<std::size_t>(s);
    if (k + 1 >= snaps_.size()) return snaps_.back();
    const double frac = s - static_cast<double>(k);
    std::vector<double> out = snaps_[k];
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += frac * (snaps_[k + 1][i] - snaps_[k][i]);
    return out;
  }

 private:
  double dw_;
  std::vector<std::vector<double>> snaps_;
};

}  // namespace

SolutionField subordination_solve(const FracOrder& beta,
                                  const GeneratorMatrix& gen,
                                  const SolutionField& f0, double t,
                                  double tol, const SubordinationOptions& opt) {
  check_compatible(gen, f0);
  if (beta.classical()) {
    const int steps = std::max(1, opt.semigroup_steps);
    return implicit_euler_solve(gen, f0, {}, TimeGrid(t, steps)).back();
  }
  const double W = specfun::inv_subordinator_tail_cutoff(beta, t, 0.5 * tol);
  CachedPropagation prop(gen, f0.values, W, std::max(1, opt.semigroup_steps));
  std::vector<double> v = subordinate_semigroup(
      beta, [&](double w) { return prop.at(w); }, gen.grid.n, t, tol);
  return SolutionField(gen.grid, std::move(v), t);
}

SolutionField subordination_inhomogeneous(const FracOrder& beta,
                                          const GeneratorMatrix& gen,
                                          const SolutionField& f0,
                                          const Forcing& R, double t,
                                          double tol,
                                          const SubordinationOptions& opt) {
  check_compatible(gen, f0);
  if (beta.classical()) {
    const int steps = std::max(1, opt.semigroup_steps);
    return duhamel_solution(gen, f0, R, TimeGrid(t, steps));
  }
  SolutionField v = subordination_solve(beta, gen, f0, t, 0.5 * tol, opt);
  if (!R) {
    v.time = t;
    return v;
  }

  // Outer quadrature over s of  F(s) = int_0^inf P_u R(.,s) h(u,t-s) du.
  const int dim = gen.grid.n;
  const auto inner = [&](double s) {
    const std::vector<double> q = sample_forcing(R, gen.grid, s);
    const double rem = t - s;
    if (rem <= 0.0) return q;
    const double W =
        specfun::inv_subordinator_tail_cutoff(beta, rem, 0.25 * tol);
    CachedPropagation prop(gen, q, W, std::max(1, opt.semigroup_steps));
    return subordinate_semigroup(
        beta, [&](double u) { return prop.at(u); }, dim, rem, 0.5 * tol);
  };

  // Adaptive GL on the vector-valued outer integrand.
  struct Outer {
    const std::function<std::vector<double>(double)>& f;
    int dim;
    int max_depth;
    std::vector<double> fixed(double a, double b, int npts) const {
      const quad::GaussRule& r = quad::gauss_legendre(npts);
      std::vector<double> acc(dim, 0.0);
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < npts; ++i) {
        const std::vector<double> u = f(mid + half * r.nodes[i]);
        kernels::axpy(half * r.weights[i], u.data(), acc.data(), dim);
      }
      return acc;
    }
    void run(double a, double b, double tol, int depth,
             std::vector<double>& out) const {
      const std::vector<double> coarse = fixed(a, b, 7);
      const std::vector<double> fine = fixed(a, b, 15);
      double err = 0.0;
      for (int i = 0; i < dim; ++i)
        err = std::max(err, std::fabs(fine[i] - coarse[i]));
      if (err <= tol || depth >= max_depth) {
        for (int i = 0; i < dim; ++i) out[i] += fine[i];
        return;
      }
      const double m = 0.5 * (a + b);
      run(a, m, 0.5 * tol, depth + 1, out);
      run(m, b, 0.5 * tol, depth + 1, out);
    }
  };

  const std::function<std::vector<double>(double)> inner_fn = inner;
  double rscale = 1e-300;
  for (int i = 0; i < dim; ++i)
    rscale = std::max(rscale, std::fabs(R(gen.grid.node(i), t)));
  Outer outer{inner_fn, dim, 10};
  std::vector<double> term2(dim, 0.0);
  outer.run(0.0, t, 0.5 * tol * std::max(1.0, rscale * t), 0, term2);

  for (int i = 0; i < dim; ++i) v.values[i] += term2[i];
  v.time = t;
  return v;
}

SolutionField eigen_heat_solution(double M, const SolutionField& f, double t,
                                  const FracOrder& beta, int modes) {
  if (!(M > 0.0)) throw std::invalid_argument("eigen_heat_solution: M <= 0");
  if (modes < 1) throw std::invalid_argument("eigen_heat_solution: modes < 1");
  const Grid1D& g = f.grid;
  const int nmax = std::min(modes, g.n);
  const double pi = std::numbers::pi;

  // Discrete sine transform (trapezoid with zero endpoints; exact
  // orthogonality on the uniform grid).
  std::vector<double> coef(nmax);
  double top = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    double s = 0.0;
    for (int i = 0; i < g.n; ++i)
      s += f.values[i] * std::sin(n * pi * (g.node(i) - g.left) / M);
    coef[n - 1] = 2.0 / M * g.dx * s;
    top = std::max(top, std::fabs(coef[n - 1]));
  }

  std::vector<double> out(g.n, 0.0);
  const double tb = std::pow(t, beta.value());
  for (int n = 1; n <= nmax; ++n) {
    if (std::fabs(coef[n - 1]) < 1e-10 * top) continue;  // dropped tail
    const double lam = (n * pi / M) * (n * pi / M);
    const double relax =
        t == 0.0 ? 1.0 : specfun::mittag_leffler(beta, -lam * tb);
    for (int i = 0; i < g.n; ++i)
      out[i] += coef[n - 1] * relax *
                std::sin(n * pi * (g.node(i) - g.left) / M);
  }
  return SolutionField(g, std::move(out), t);
}

}  // namespace stfrac

#pragma once

// Deterministic solution paths: implicit Euler time stepping (homogeneous
// and forced), the L1 Caputo scheme, Duhamel and subordination quadrature,
// and the eigenfunction reference solution for the alpha = 2 operator.
//
// All solvers treat their input as mild-solution data; membership of the
// initial value in the generator domain is not (and cannot cheaply be)
// verified.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stfrac/fracops.hpp"
#include "stfrac/grid.hpp"
#include "stfrac/specfun.hpp"

namespace stfrac {

// g(x,t); empty function means no forcing.
using Forcing = std::function<double(double, double)>;

// (I - dt A) u^{k+1} = u^k + dt g(., t_{k+1}); snapshots at every time node
// including t = 0.  Forcing sampled fully implicitly at t_{k+1}.
std::vector<SolutionField> implicit_euler_solve(const GeneratorMatrix& gen,
                                                const SolutionField& f0,
                                                const Forcing& forcing,
                                                const TimeGrid& tg);

// Mild-solution convolution u(T) = P_T f + int_0^T P_s g(., T-s) ds by
// trapezoidal quadrature over s, reusing one-step implicit-Euler
// propagation.  Serves as an independent oracle for the forced stepper.
SolutionField duhamel_solution(const GeneratorMatrix& gen,
                               const SolutionField& f0, const Forcing& forcing,
                               const TimeGrid& tg);

// L1 discretization of the Caputo derivative of order beta in (0,1]:
//   sum_j c_j (u^{k+1-j} - u^{k-j}) = A u^{k+1},
//   c_j = ((j+1)^{1-beta} - j^{1-beta}) dt^{-beta} / Gamma(2-beta).
// At beta = 1 the history collapses and the scheme is exactly implicit
// Euler, including the arithmetic path.
std::vector<SolutionField> l1_caputo_solve(const FracOrder& beta,
                                           const GeneratorMatrix& gen,
                                           const SolutionField& f0,
                                           const TimeGrid& tg);

// --- subordination quadrature ----------------------------------------------

struct SubordinationOptions {
  // Path step count for the cached implicit-Euler semigroup run, per unit
  // of the truncation horizon W (the run uses ceil(steps_per_horizon) steps).
  int semigroup_steps = 2048;
  int max_depth = 18;
};

// v(x,t) = int_0^inf h(w,t) u(x,w) dw for a semigroup provided as a
// callable w -> u(.,w).  The truncation point W keeps the dropped tail of
// h below tol, via the Markov bound on the moments of E_t.  beta = 1 short
// circuits to semigroup(t).
std::vector<double> subordinate_semigroup(
    const FracOrder& beta,
    const std::function<std::vector<double>(double)>& semigroup, int dim,
    double t, double tol);

// Same, with the semigroup produced by one fine implicit-Euler run cached
// at quadrature nodes via linear interpolation in w.
SolutionField subordination_solve(const FracOrder& beta,
                                  const GeneratorMatrix& gen,
                                  const SolutionField& f0, double t,
                                  double tol,
                                  const SubordinationOptions& opt = {});

// Inhomogeneous mild solution
//   v(t) = int_0^inf P_s f h(s,t) ds
//        + int_0^t int_0^inf P_u R(.,s) h(u,t-s) du ds
// with the convention R(x,0) = 0.  beta = 1 short circuits to the Duhamel
// solution.
SolutionField subordination_inhomogeneous(const FracOrder& beta,
                                          const GeneratorMatrix& gen,
                                          const SolutionField& f0,
                                          const Forcing& R, double t,
                                          double tol,
                                          const SubordinationOptions& opt = {});

// --- eigenfunction reference -----------------------------------------------

// u(x,t) = sum_{n<=modes} f_n E_beta(-lambda_n t^beta) sin(n pi x / M) on
// (0,M) with lambda_n = (n pi / M)^2; f_n from the discrete sine transform
// of the grid samples (exact for grid functions).  Tail modes whose
// coefficient bound drops below 1e-10 of the leading one are skipped.
SolutionField eigen_heat_solution(double M, const SolutionField& f, double t,
                                  const FracOrder& beta, int modes);

}  // namespace stfrac

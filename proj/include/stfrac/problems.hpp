#pragma once

// Benchmark problem registry: the two forced polynomial benchmarks with
// closed-form solutions, the eigenfunction heat problem, the scalar
// Mittag-Leffler relaxation mode, and the homogeneous variant used for
// Monte Carlo cross-checks.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stfrac/fracops.hpp"
#include "stfrac/grid.hpp"
#include "stfrac/solvers.hpp"
#include "stfrac/stochastic.hpp"

namespace stfrac {

struct BenchmarkProblem {
  std::string name;
  Interval domain{0.0, 1.0};
  std::optional<StableOperatorSpec> op;  // absent for the scalar mode
  double relaxation_rate = 0.0;          // lambda of the scalar mode
  FracOrder beta{1.0};
  std::function<double(double)> initial;
  Forcing forcing;                                  // empty if none
  std::function<double(double, double)> exact;      // empty if unknown
  // Pointwise PDE residual of the exact solution, assembled from the
  // power-law derivative formulas; empty when no such closed form exists.
  std::function<double(double, double)> residual;

  bool has_exact() const { return static_cast<bool>(exact); }

  Grid1D make_grid(int nx) const;
  GeneratorMatrix build_generator(int nx) const;
  SolutionField initial_field(const Grid1D& g) const;
};

// Forced two-sided problem on (0,1), exact solution t x^2 (1-x)^2.
// alpha, b, c are registry defaults, not paper data; any admissible
// b != c pair works.
BenchmarkProblem problem_ex4(double alpha = 1.8, double b = 1.0,
                             double c = 0.5);

// The same operator and initial data x^2(1-x)^2 with the forcing stripped;
// no exact solution, used for cross-path and Monte Carlo checks.
BenchmarkProblem problem_ex4_homogeneous(const FracOrder& beta,
                                         double alpha = 1.8, double b = 1.0,
                                         double c = 0.5);

// Variable-coefficient two-sided problem on (0,2) with exact solution
// 4 e^{-t} x^2 (2-x)^2.
BenchmarkProblem problem_mt2sided();

// alpha = 2, b = c = 1/2 on (0,M), initial sin(pi x / M), exact
// E_beta(-(pi/M)^2 t^beta) sin(pi x / M).
BenchmarkProblem problem_heat_eigen(double M, const FracOrder& beta);

// Degenerate single-node problem with generator (-lambda); exact
// v(t) = E_beta(-lambda t^beta).
BenchmarkProblem problem_ml_relaxation(double lambda, const FracOrder& beta);

// Registry access by name ("ex4", "ex4_homogeneous", "mt2sided",
// "heat_eigen", "ml_relaxation").  Throws std::out_of_range for unknown
// names; the message lists the registry.
struct ProblemParams {
  std::optional<double> beta;     // overrides the problem default
  std::optional<double> lambda;   // ml_relaxation rate
  std::optional<double> domain_m;  // heat_eigen interval length
};
BenchmarkProblem make_problem(const std::string& name,
                              const ProblemParams& params = {});
std::vector<std::string> registry_names();

// Registry invariants: initial vanishes at the boundary, exact(.,0)
// matches initial to 1e-12, exact vanishes at the endpoints.  Throws on
// violation.
void validate_problem(const BenchmarkProblem& p);

}  // namespace stfrac

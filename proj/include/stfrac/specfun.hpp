#pragma once

// Special functions of time-fractional diffusion: the Mittag-Leffler
// relaxation function, the one-sided stable density g_beta, the inverse
// stable subordinator density h(w,t), and gamma ratios for power-law
// fractional derivatives.
//
// All functions here are pure functions of their value arguments and are
// safe to call concurrently.

#include <stdexcept>

namespace stfrac {

// Time-fractional order beta in (0,1]; beta = 1 is the classical limit.
class FracOrder {
 public:
  explicit FracOrder(double beta) : beta_(beta) {
    if (!(beta > 0.0) || beta > 1.0)
      throw std::domain_error("FracOrder: beta must lie in (0,1]");
  }
  double value() const { return beta_; }
  bool classical() const { return beta_ == 1.0; }

 private:
  double beta_;
};

// Space-fractional order alpha in (0,1) or (1,2]; alpha = 2 is the
// Laplacian limit.  alpha = 1 is rejected.
class StabilityIndex {
 public:
  explicit StabilityIndex(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || alpha > 2.0 || alpha == 1.0)
      throw std::domain_error(
          "StabilityIndex: alpha must lie in (0,1) or (1,2]");
  }
  double value() const { return alpha_; }
  bool laplacian() const { return alpha_ == 2.0; }

 private:
  double alpha_;
};

namespace specfun {

// Default tolerances.  Functions take them as defaulted arguments so a
// caller can tighten or relax individual evaluations without touching
// shared state.
inline constexpr double kMittagLefflerRelTol = 1e-11;
inline constexpr double kStableDensityTol = 1e-10;

// E_beta(z) for z <= 0, by power series / smallest-term asymptotics, with
// the completely-monotone spectral integral covering the crossover band.
// Relative accuracy ~1e-11 or better for |z| <= 100.
double mittag_leffler(const FracOrder& beta, double z,
                      double rel_tol = kMittagLefflerRelTol);

// Gamma(p+1)/Gamma(p+1-alpha).  Throws on poles of the denominator's
// argument (p+1-alpha a nonpositive integer).
double gamma_ratio(double p, const StabilityIndex& alpha);

// One-sided stable density g_beta(u) with Laplace transform e^{-s^beta},
// 0 < beta < 1.  Closed form at beta = 1/2, Zolotarev integral otherwise.
// Returns 0 for u <= 0.  Throws for beta = 1 (degenerate point mass).
double stable_density(const FracOrder& beta, double u,
                      double tol = kStableDensityTol);

// The Zolotarev-integral evaluation path regardless of beta; public so the
// beta = 1/2 closed form can be cross-checked against it.
double stable_density_zolotarev(const FracOrder& beta, double u,
                                double tol = kStableDensityTol);

// Inverse stable subordinator density
//   h(w,t) = (t/beta) w^{-1-1/beta} g_beta(t w^{-1/beta}).
// Closed form e^{-w^2/(4t)}/sqrt(pi t) at beta = 1/2.
double inv_subordinator_density(const FracOrder& beta, double w, double t,
                                double tol = kStableDensityTol);

// General-formula evaluation path for the same density (cross-check hook).
double inv_subordinator_density_general(const FracOrder& beta, double w,
                                        double t,
                                        double tol = kStableDensityTol);

// Smallest W with P(E_t > W) <= tail_mass, from the Markov bound on the
// moments E[E_t^m] = m! t^{beta m} / Gamma(beta m + 1).
double inv_subordinator_tail_cutoff(const FracOrder& beta, double t,
                                    double tail_mass);

}  // namespace specfun
}  // namespace stfrac

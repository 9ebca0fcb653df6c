#pragma once

// Monte Carlo solution path: stable subordinators via the Kanter
// transform, inverse subordinators via the first-passage identity,
// two-sided stable increments via Chambers-Mallows-Stuck, killed path
// simulation, and the estimator v(x,t) = E^x[f(X^Omega_{E_t})].

#include <cstdint>
#include <functional>
#include <vector>

#include "stfrac/fracops.hpp"
#include "stfrac/specfun.hpp"

namespace stfrac {

struct Interval {
  double left;
  double right;
  bool contains(double x) const { return x > left && x < right; }
};

// Identifies one reproducible, statistically independent draw sequence.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// xoshiro256++ seeded through SplitMix64 over (seed, stream_id).
class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next_u64();
  double uniform();      // [0,1)
  double exponential();  // rate 1, strictly positive

 private:
  std::uint64_t s_[4];
};

struct MCConfig {
  long particles = 10000;
  long particle_offset = 0;  // first particle index (for partitioned runs)
  double dt = 1e-3;          // path step
  std::uint64_t seed = 0;
  int threads = 0;           // 0: hardware concurrency
};

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
  long n = 0;
};

// One draw of D_1: totally skewed positive stable, Laplace transform
// e^{-s^beta}, 0 < beta < 1.
double sample_subordinator(const FracOrder& beta, Rng& rng);

// E_t = (t / D_1)^beta via the first-passage identity
// P(E_t <= w) = P(D_w >= t).
double sample_inverse_subordinator(const FracOrder& beta, double t, Rng& rng);

// Standard parametrization map: over a step dt the increment of the Levy
// process with symbol psi(k) = -iak + b(ik)^alpha + c(-ik)^alpha is stable
// with scale (dt (b+c) |cos(pi alpha/2)|)^{1/alpha}, skewness
// (c-b)/(b+c) and location -a dt.  (The characteristic-function test in
// the suite is the executable derivation of this map.)
struct StableParams {
  double alpha;
  double skew;
  double scale;
  double location;
};
StableParams stable_increment_params(const StableOperatorSpec& spec,
                                     double dt);

// One increment over dt; requires constant coefficients and alpha in (1,2].
double sample_stable_increment(const StableOperatorSpec& spec, double dt,
                               Rng& rng);

// Draw from S_alpha(scale, skew, location), alpha in (1,2].
double sample_stable(const StableParams& p, Rng& rng);

struct PathState {
  bool alive = true;
  double position = 0.0;
};

// Step the path with stable increments (constant coefficients) or
// state-frozen coefficient scaling (variable coefficients, Euler-Maruyama
// flavor); killed at the first step landing outside (left,right).  Exit
// detection is at step granularity only; the killing bias decays with dt
// and is controlled by the harness's dt ladder.
PathState simulate_killed_path(double x0, const StableOperatorSpec& spec,
                               const Interval& domain, double horizon,
                               double dt, Rng& rng);

// Per particle: draw E_t (identity when beta = 1), run the killed path to
// horizon E_t, score f(position) if alive else 0.  Particles use disjoint
// derived streams (path and time change separated), so the estimate is
// independent of threading and partitioning up to compensated-summation
// roundoff.
MCEstimate mc_solution(double x0, const std::function<double(double)>& f,
                       double t, const FracOrder& beta,
                       const StableOperatorSpec& spec, const Interval& domain,
                       const MCConfig& mc);

// Merge partial estimates (associative up to roundoff).
MCEstimate merge_estimates(const std::vector<MCEstimate>& parts);

}  // namespace stfrac

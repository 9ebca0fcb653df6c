#include "stfrac/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "stfrac/kernels.hpp"

namespace stfrac {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix_step(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngStream stream) {
  std::uint64_t x = stream.seed;
  (void)splitmix_step(x);
  x ^= 0xD1342543DE82EF95ULL * (stream.stream_id + 1);
  bool nonzero = false;
  for (auto& s : s_) {
    s = splitmix_step(x);
    nonzero |= (s != 0);
  }
  if (!nonzero) s_[0] = 1;
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::exponential() {
  double e;
  do {
    e = -std::log1p(-uniform());
  } while (e == 0.0);
  return e;
}

namespace {

double sinc(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// log A(v) of the Kanter representation,
//   A(v) = [b sinc(b v)]^b [(1-b) sinc((1-b) v)]^{1-b} / sinc(v).
double kanter_log_a(double b, double v) {
  return b * std::log(b * sinc(b * v)) +
         (1.0 - b) * std::log((1.0 - b) * sinc((1.0 - b) * v)) -
         std::log(sinc(v));
}

}  // namespace

double sample_subordinator(const FracOrder& beta, Rng& rng) {
  const double b = beta.value();
  if (b >= 1.0)
    throw std::domain_error("sample_subordinator: beta must be < 1");
  // Kanter: D = (A(V)^{1/(1-b)} / W)^{(1-b)/b},  V ~ U(0,pi), W ~ Exp(1).
  const double v = kPi * rng.uniform();
  const double w = rng.exponential();
  const double logd =
      kanter_log_a(b, v) / b - (1.0 - b) / b * std::log(w);
  return std::exp(logd);
}

double sample_inverse_subordinator(const FracOrder& beta, double t, Rng& rng) {
  if (!(t > 0.0))
    throw std::domain_error("sample_inverse_subordinator: t must be > 0");
  if (beta.classical()) return t;
  const double d = sample_subordinator(beta, rng);
  return std::pow(t / d, beta.value());
}

StableParams stable_increment_params(const StableOperatorSpec& spec,
                                     double dt) {
  if (!spec.constant_coefficients())
    throw std::invalid_argument(
        "stable_increment_params: variable coefficients; use the"
        " Euler-Maruyama path in simulate_killed_path");
  const double a = spec.alpha.value();
  if (!(a > 1.0))
    throw std::domain_error(
        "stable_increment_params: increments defined for alpha in (1,2]");
  const double b = spec.left_weight.constant_value();
  const double c = spec.right_weight.constant_value();
  StableParams p{};
  p.alpha = a;
  p.location = -spec.drift * dt;
  const double total = b + c;
  if (total <= 0.0) {
    p.skew = 0.0;
    p.scale = 0.0;  // pure drift: deterministic shift
    return p;
  }
  p.skew = (c - b) / total;
  p.scale =
      std::pow(dt * total * std::fabs(std::cos(kPi * a / 2.0)), 1.0 / a);
  return p;
}

double sample_stable(const StableParams& p, Rng& rng) {
  if (p.scale == 0.0) return p.location;
  const double a = p.alpha;
  const double ta = std::tan(kPi * a / 2.0);
  const double theta0 = std::atan(p.skew * ta) / a;
  const double S = std::pow(1.0 + p.skew * p.skew * ta * ta, 1.0 / (2.0 * a));
  const double u = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double x = S * std::sin(a * (u + theta0)) /
                   std::pow(std::cos(u), 1.0 / a) *
                   std::pow(std::cos(u - a * (u + theta0)) / w,
                            (1.0 - a) / a);
  return p.location + p.scale * x;
}

double sample_stable_increment(const StableOperatorSpec& spec, double dt,
                               Rng& rng) {
  return sample_stable(stable_increment_params(spec, dt), rng);
}

PathState simulate_killed_path(double x0, const StableOperatorSpec& spec,
                               const Interval& domain, double horizon,
                               double dt, Rng& rng) {
  if (!domain.contains(x0))
    throw std::invalid_argument("simulate_killed_path: x0 not interior");
  if (!(dt > 0.0))
    throw std::invalid_argument("simulate_killed_path: dt must be > 0");
  PathState st{true, x0};
  if (horizon <= 0.0) return st;

  const bool constant = spec.constant_coefficients();
  const double a = spec.alpha.value();
  if (!(a > 1.0))
    throw std::domain_error(
        "simulate_killed_path: paths defined for alpha in (1,2]");

  StableParams params{};
  if (constant) params = stable_increment_params(spec, dt);

  double s = 0.0;
  while (s < horizon) {
    const double h = std::min(dt, horizon - s);
    StableParams step = params;
    if (!constant || h != dt) {
      // freeze coefficients at the current state (Euler-Maruyama flavor)
      const double bl = spec.left_weight(st.position);
      const double cr = spec.right_weight(st.position);
      step.alpha = a;
      step.location = -spec.drift * h;
      const double total = bl + cr;
      if (total > 0.0) {
        step.skew = (cr - bl) / total;
        step.scale = std::pow(
            h * total * std::fabs(std::cos(kPi * a / 2.0)), 1.0 / a);
      } else {
        step.skew = 0.0;
        step.scale = 0.0;
      }
    }
    st.position += sample_stable(step, rng);
    s += h;
    if (!domain.contains(st.position)) {
      st.alive = false;
      return st;
    }
  }
  return st;
}

namespace {

struct Accum {
  kernels::CompensatedSum sum;
  kernels::CompensatedSum sumsq;
  long n = 0;
};

Accum run_particles(double x0, const std::function<double(double)>& f,
                    double t, const FracOrder& beta,
                    const StableOperatorSpec& spec, const Interval& domain,
                    const MCConfig& mc, long first, long last) {
  Accum acc;
  for (long p = first; p < last; ++p) {
    // Disjoint derived streams: even ids drive the path, odd ids the time
    // change.
    Rng rng_path({mc.seed, static_cast<std::uint64_t>(2 * p)});
    Rng rng_time({mc.seed, static_cast<std::uint64_t>(2 * p + 1)});
    const double horizon =
        beta.classical() ? t : sample_inverse_subordinator(beta, t, rng_time);
    const PathState st =
        simulate_killed_path(x0, spec, domain, horizon, mc.dt, rng_path);
    const double score = st.alive ? f(st.position) : 0.0;
    acc.sum.add(score);
    acc.sumsq.add(score * score);
    ++acc.n;
  }
  return acc;
}

}  // namespace

MCEstimate mc_solution(double x0, const std::function<double(double)>& f,
                       double t, const FracOrder& beta,
                       const StableOperatorSpec& spec, const Interval& domain,
                       const MCConfig& mc) {
  if (mc.particles < 1)
    throw std::invalid_argument("mc_solution: need at least one particle");
  int nthreads = mc.threads > 0
                     ? mc.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(
      std::min<long>(nthreads, mc.particles));

  const long lo = mc.particle_offset;
  const long hi = mc.particle_offset + mc.particles;
  std::vector<Accum> parts(nthreads);
  if (nthreads == 1) {
    parts[0] = run_particles(x0, f, t, beta, spec, domain, mc, lo, hi);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (mc.particles + nthreads - 1) / nthreads;
    for (int th = 0; th < nthreads; ++th) {
      const long first = lo + th * chunk;
      const long last = std::min<long>(hi, first + chunk);
      pool.emplace_back([&, th, first, last] {
        parts[th] = run_particles(x0, f, t, beta, spec, domain, mc, first, last);
      });
    }
    for (auto& th : pool) th.join();
  }

  Accum total;
  for (const Accum& a : parts) {  // fixed merge order: deterministic
    total.sum.merge(a.sum);
    total.sumsq.merge(a.sumsq);
    total.n += a.n;
  }
  MCEstimate est;
  est.n = total.n;
  est.mean = total.sum.value() / static_cast<double>(total.n);
  if (total.n > 1) {
    const double var =
        (total.sumsq.value() - static_cast<double>(total.n) * est.mean * est.mean) /
        static_cast<double>(total.n - 1);
    est.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(total.n));
  }
  return est;
}

MCEstimate merge_estimates(const std::vector<MCEstimate>& parts) {
  kernels::CompensatedSum sum, sumsq;
  long n = 0;
  for (const MCEstimate& e : parts) {
    sum.add(e.mean * static_cast<double>(e.n));
    const double ss = e.stderr_ * e.stderr_ * static_cast<double>(e.n) *
                          static_cast<double>(e.n - 1) +
                      static_cast<double>(e.n) * e.mean * e.mean;
    sumsq.add(ss);
    n += e.n;
  }
  MCEstimate out;
  out.n = n;
  if (n == 0) return out;
  out.mean = sum.value() / static_cast<double>(n);
  if (n > 1) {
    const double var =
        (sumsq.value() - static_cast<double>(n) * out.mean * out.mean) /
        static_cast<double>(n - 1);
    out.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
  return out;
}

}  // namespace stfrac

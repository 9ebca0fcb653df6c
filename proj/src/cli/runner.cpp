#include "stfrac/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "stfrac/io.hpp"
#include "stfrac/kernels.hpp"
#include "stfrac/problems.hpp"
#include "stfrac/quadrature.hpp"
#include "stfrac/solvers.hpp"

namespace stfrac::cli {

using nlohmann::json;

namespace {

const char* kValidSolvers[] = {"implicit_euler", "l1", "subordination", "mc"};

void require_positive(const json& j, const char* field, double v) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "config field '" << field << "': must be positive, got " << j.dump();
    throw ConfigError(os.str());
  }
}

template <class T>
T get_field(const json& j, const char* field, T fallback) {
  if (!j.contains(field)) return fallback;
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    std::ostringstream os;
    os << "config field '" << field << "': " << e.what();
    throw ConfigError(os.str());
  }
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (doc.contains("config")) doc = doc.at("config");  // sidecar round-trip
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const char* known[] = {
      "problem", "nx",     "dt",     "t_end",  "beta",          "solver",
      "tol",     "output", "mc",     "points", "levels",        "lambda",
      "domain_m", "bias_allowance",  "export_matrix"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw ConfigError("config field '" + key + "': unknown field");
  }

  RunConfig c;
  if (!doc.contains("problem"))
    throw ConfigError("config field 'problem': required");
  c.problem = get_field<std::string>(doc, "problem", "");
  c.nx = get_field<int>(doc, "nx", c.nx);
  if (c.nx < 1 || c.nx > 4096)
    throw ConfigError("config field 'nx': must lie in [1, 4096]");
  c.dt = get_field<double>(doc, "dt", c.dt);
  require_positive(doc, "dt", c.dt);
  c.t_end = get_field<double>(doc, "t_end", c.t_end);
  require_positive(doc, "t_end", c.t_end);
  c.beta = get_field<double>(doc, "beta", c.beta);
  if (!(c.beta > 0.0) || c.beta > 1.0)
    throw ConfigError("config field 'beta': must lie in (0,1]");
  c.solver = get_field<std::string>(doc, "solver", c.solver);
  if (std::find_if(std::begin(kValidSolvers), std::end(kValidSolvers),
                   [&](const char* s) { return c.solver == s; }) ==
      std::end(kValidSolvers))
    throw ConfigError(
        "config field 'solver': expected implicit_euler, l1, subordination "
        "or mc");
  c.tol = get_field<double>(doc, "tol", c.tol);
  require_positive(doc, "tol", c.tol);
  c.output = get_field<std::string>(doc, "output", c.output);
  c.levels = get_field<int>(doc, "levels", c.levels);
  if (c.levels < 2 || c.levels > 12)
    throw ConfigError("config field 'levels': must lie in [2, 12]");
  c.bias_allowance = get_field<double>(doc, "bias_allowance", 0.0);
  if (c.bias_allowance < 0.0)
    throw ConfigError("config field 'bias_allowance': must be >= 0");
  if (doc.contains("lambda")) {
    c.lambda = get_field<double>(doc, "lambda", 1.0);
    require_positive(doc, "lambda", *c.lambda);
  }
  if (doc.contains("domain_m")) {
    c.domain_m = get_field<double>(doc, "domain_m", 1.0);
    require_positive(doc, "domain_m", *c.domain_m);
  }
  c.export_matrix = get_field<bool>(doc, "export_matrix", false);
  if (doc.contains("points")) {
    c.points = get_field<std::vector<double>>(doc, "points", {});
  }
  if (doc.contains("mc")) {
    const json& m = doc.at("mc");
    if (!m.is_object()) throw ConfigError("config field 'mc': must be an object");
    MCConfig mc;
    mc.particles = get_field<long>(m, "particles", 10000L);
    if (mc.particles < 1)
      throw ConfigError("config field 'mc.particles': must be >= 1");
    mc.dt = get_field<double>(m, "dt", 1e-3);
    if (!(mc.dt > 0.0)) throw ConfigError("config field 'mc.dt': must be > 0");
    mc.seed = get_field<std::uint64_t>(m, "seed", 0ULL);
    mc.threads = get_field<int>(m, "threads", 0);
    c.mc = mc;
  }
  if (c.solver == "mc" && !c.mc)
    throw ConfigError("config field 'mc': required when solver is 'mc'");
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json doc;
  doc["problem"] = c.problem;
  doc["nx"] = c.nx;
  doc["dt"] = c.dt;
  doc["t_end"] = c.t_end;
  doc["beta"] = c.beta;
  doc["solver"] = c.solver;
  doc["tol"] = c.tol;
  doc["output"] = c.output;
  doc["levels"] = c.levels;
  doc["bias_allowance"] = c.bias_allowance;
  doc["export_matrix"] = c.export_matrix;
  if (c.lambda) doc["lambda"] = *c.lambda;
  if (c.domain_m) doc["domain_m"] = *c.domain_m;
  if (!c.points.empty()) doc["points"] = c.points;
  if (c.mc) {
    doc["mc"] = {{"particles", c.mc->particles},
                 {"dt", c.mc->dt},
                 {"seed", c.mc->seed},
                 {"threads", c.mc->threads}};
  }
  return doc.dump(2);
}

namespace {

BenchmarkProblem problem_from_config(const RunConfig& c) {
  ProblemParams params;
  params.beta = c.beta;
  params.lambda = c.lambda;
  params.domain_m = c.domain_m;
  return make_problem(c.problem, params);
}

int step_count(const RunConfig& c) {
  return std::max(1, static_cast<int>(std::llround(c.t_end / c.dt)));
}

double interp_field(const SolutionField& f, double x) {
  const Grid1D& g = f.grid;
  if (x <= g.left || x >= g.right) return 0.0;
  const double s = (x - g.left) / g.dx - 1.0;  // node index coordinate
  if (s <= 0.0)
    return (s + 1.0) * f.values[0];  // between boundary zero and node 0
  const int k = static_cast<int>(s);
  if (k >= g.n - 1) {
    const double frac = (x - g.node(g.n - 1)) / g.dx;
    return (1.0 - frac) * f.values[g.n - 1];
  }
  const double frac = s - k;
  return (1.0 - frac) * f.values[k] + frac * f.values[k + 1];
}

// Monte Carlo estimate for one evaluation point of a spatial problem, or
// the scalar-mode subordination estimator for ml_relaxation.
MCEstimate mc_point_estimate(const BenchmarkProblem& p, double x, double t,
                             const MCConfig& mc) {
  if (p.op) {
    return mc_solution(x, p.initial, t, p.beta, *p.op, p.domain, mc);
  }
  // scalar relaxation mode: v(t) = E[exp(-lambda E_t)]
  kernels::CompensatedSum sum, sumsq;
  for (long i = 0; i < mc.particles; ++i) {
    Rng rng({mc.seed, static_cast<std::uint64_t>(2 * i + 1)});
    const double et = p.beta.classical()
                          ? t
                          : sample_inverse_subordinator(p.beta, t, rng);
    const double score = std::exp(-p.relaxation_rate * et);
    sum.add(score);
    sumsq.add(score * score);
  }
  MCEstimate est;
  est.n = mc.particles;
  est.mean = sum.value() / static_cast<double>(est.n);
  if (est.n > 1) {
    const double var = (sumsq.value() -
                        static_cast<double>(est.n) * est.mean * est.mean) /
                       static_cast<double>(est.n - 1);
    est.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(est.n));
  }
  return est;
}

SolutionField dispatch_deterministic(const RunConfig& c,
                                     const BenchmarkProblem& p,
                                     const GeneratorMatrix& gen,
                                     const SolutionField& f0) {
  const TimeGrid tg(c.t_end, step_count(c));
  if (c.solver == "implicit_euler")
    return implicit_euler_solve(gen, f0, p.forcing, tg).back();
  if (c.solver == "l1") {
    if (p.forcing)
      throw ConfigError(
          "solver 'l1': problem has a forcing term; the L1 path is "
          "homogeneous only");
    return l1_caputo_solve(p.beta, gen, f0, tg).back();
  }
  if (c.solver == "subordination") {
    if (p.forcing)
      throw ConfigError(
          "solver 'subordination': use a forcing-free problem (the "
          "inhomogeneous path is a library call)");
    SubordinationOptions opt;
    opt.semigroup_steps = std::max(64, step_count(c));
    return subordination_solve(p.beta, gen, f0, c.t_end, c.tol, opt);
  }
  throw ConfigError("unknown deterministic solver: " + c.solver);
}

}  // namespace

SolveReport run_solve(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkProblem p = problem_from_config(config);
  const GeneratorMatrix gen = p.build_generator(config.nx);
  const SolutionField f0 = p.initial_field(gen.grid);

  SolutionField result = SolutionField::zero(gen.grid);
  std::vector<double> mc_stderr;
  if (config.solver == "mc") {
    if (!config.mc) throw ConfigError("solver 'mc' needs an mc block");
    std::vector<double> xs = config.points;
    if (xs.empty()) xs = gen.grid.nodes();
    std::vector<double> vals(xs.size());
    mc_stderr.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!p.domain.contains(xs[i]))
        throw ConfigError("mc point outside the open domain");
      const MCEstimate est =
          mc_point_estimate(p, xs[i], config.t_end, *config.mc);
      vals[i] = est.mean;
      mc_stderr[i] = est.stderr_;
    }
    // Emit the evaluated points as the CSV rows.
    std::ofstream os(config.output, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + config.output);
    os << "x,u\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      os << io::format_double(xs[i]) << "," << io::format_double(vals[i])
         << "\n";
    os.close();
  } else {
    result = dispatch_deterministic(config, p, gen, f0);
    io::write_field_csv(result, config.output);
  }

  if (config.export_matrix) {
    std::ofstream ms(config.output + ".mtx", std::ios::binary);
    export_matrix_market(gen, ms);
  }

  SolveReport report;
  report.csv_path = config.output;
  report.sidecar_path = config.output + ".json";
  if (p.has_exact() && config.solver != "mc") {
    double err = 0.0;
    for (int i = 0; i < gen.grid.n; ++i)
      err = std::max(err, std::fabs(result.values[i] -
                                    p.exact(gen.grid.node(i), config.t_end)));
    report.max_error = err;
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  json sidecar;
  sidecar["config"] = json::parse(config_to_json(config));
  sidecar["run"] = {
      {"steps", step_count(config)},
      {"dt_actual", config.t_end / step_count(config)},
      {"dx", gen.grid.dx},
      {"kernels", kernels::active().name},
      {"wall_ms", report.wall_ms},
  };
  if (report.max_error) sidecar["run"]["max_error"] = *report.max_error;
  if (!mc_stderr.empty()) sidecar["run"]["mc_stderr"] = mc_stderr;
  if (!gen.warnings.empty()) sidecar["run"]["warnings"] = gen.warnings;
  std::ofstream ss(report.sidecar_path, std::ios::binary);
  if (!ss) throw std::runtime_error("cannot open " + report.sidecar_path);
  ss << sidecar.dump(2) << "\n";
  return report;
}

std::vector<ConvergenceRow> run_converge(const RunConfig& config, int levels) {
  if (levels < 2) throw ConfigError("converge: need at least 2 levels");
  const BenchmarkProblem p = problem_from_config(config);
  if (!p.has_exact())
    throw ConfigError("converge: problem '" + p.name +
                      "' has no exact solution");
  if (config.solver == "mc")
    throw ConfigError("converge: use a deterministic solver");

  std::vector<ConvergenceRow> rows;
  for (int lev = 0; lev < levels; ++lev) {
    RunConfig c = config;
    c.nx = (config.nx + 1) * (1 << lev) - 1;  // halves dx exactly
    c.dt = config.dt / (1 << lev);
    const BenchmarkProblem pl = problem_from_config(c);
    const GeneratorMatrix gen = pl.build_generator(c.nx);
    const SolutionField f0 = pl.initial_field(gen.grid);
    const SolutionField u = dispatch_deterministic(c, pl, gen, f0);
    double emax = 0.0, e2 = 0.0;
    for (int i = 0; i < gen.grid.n; ++i) {
      const double e =
          std::fabs(u.values[i] - pl.exact(gen.grid.node(i), c.t_end));
      emax = std::max(emax, e);
      e2 += e * e;
    }
    e2 = std::sqrt(gen.grid.dx * e2);
    ConvergenceRow row{c.nx, c.t_end / step_count(c), emax, e2, {}};
    if (!rows.empty() && rows.back().max_error > 0.0 && emax > 0.0)
      row.observed_order = std::log2(rows.back().max_error / emax);
    rows.push_back(row);
  }
  return rows;
}

std::vector<McCompareRow> run_mc_compare(const RunConfig& config,
                                         const std::vector<double>& points) {
  if (!config.mc) throw ConfigError("mc compare: config needs an mc block");
  if (points.empty()) throw ConfigError("mc compare: no points given");
  const BenchmarkProblem p = problem_from_config(config);
  if (p.forcing)
    throw ConfigError("mc compare: forcing-free problems only");

  // Deterministic reference: exact when available, otherwise the
  // appropriate deterministic scheme on the configured grid.
  std::optional<SolutionField> ref;
  if (!p.has_exact()) {
    RunConfig c = config;
    c.solver = p.beta.classical() ? "implicit_euler" : "l1";
    const GeneratorMatrix gen = p.build_generator(c.nx);
    ref = dispatch_deterministic(c, p, gen, p.initial_field(gen.grid));
  }

  std::vector<McCompareRow> rows;
  for (double x : points) {
    if (!p.domain.contains(x))
      throw ConfigError("mc compare: point outside the open domain");
    const double det =
        p.has_exact() ? p.exact(x, config.t_end) : interp_field(*ref, x);
    const MCEstimate est = mc_point_estimate(p, x, config.t_end, *config.mc);
    McCompareRow row{};
    row.x = x;
    row.deterministic = det;
    row.mc_mean = est.mean;
    row.mc_stderr = est.stderr_;
    const double diff = est.mean - det;
    row.z = est.stderr_ > 0.0 ? diff / est.stderr_
                              : (diff == 0.0 ? 0.0 : std::copysign(1e30, diff));
    row.flagged =
        std::fabs(diff) > 3.0 * est.stderr_ + config.bias_allowance;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SubcheckRow> run_subordination_check(
    const std::vector<double>& betas, const std::vector<double>& lambdas,
    const std::vector<double>& times, double tol) {
  std::vector<SubcheckRow> rows;
  for (double b : betas) {
    const FracOrder beta(b);
    if (beta.classical())
      throw ConfigError("subcheck: beta must lie in (0,1)");
    for (double lam : lambdas) {
      for (double t : times) {
        const auto semigroup = [lam](double w) {
          return std::vector<double>{std::exp(-lam * w)};
        };
        const double q =
            subordinate_semigroup(beta, semigroup, 1, t, tol)[0];
        const double ml =
            lam == 0.0
                ? 1.0
                : specfun::mittag_leffler(beta, -lam * std::pow(t, b));
        rows.push_back({b, lam, t, q, ml, std::fabs(q - ml)});
      }
    }
  }
  return rows;
}

}  // namespace stfrac::cli

#pragma once

// Batch harness: configuration parsing, solver dispatch, convergence
// studies, Monte Carlo comparisons and the subordination identity check.
// Exit codes: 0 success, 1 numeric failure, 2 validation failure.

#include <optional>
#include <string>
#include <vector>

#include "stfrac/stochastic.hpp"

namespace stfrac::cli {

// Raised for anything wrong with the configuration or argument set.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem;
  int nx = 128;
  double dt = 1e-3;
  double t_end = 1.0;
  double beta = 1.0;
  std::string solver = "implicit_euler";
  double tol = 1e-8;
  std::string output = "out.csv";
  std::optional<MCConfig> mc;
  std::vector<double> points;
  int levels = 4;
  double bias_allowance = 0.0;          // Monte Carlo comparison slack
  std::optional<double> lambda;         // ml_relaxation rate
  std::optional<double> domain_m;       // heat_eigen interval length
  bool export_matrix = false;           // matrix-market debug dump
};

// Parse and validate a JSON config document; error messages carry the
// offending field name.
RunConfig parse_config_json(const std::string& text);
std::string config_to_json(const RunConfig& c);  // defaults materialized

struct SolveReport {
  double wall_ms = 0.0;
  std::optional<double> max_error;  // vs exact, when available
  std::string csv_path;
  std::string sidecar_path;
};
SolveReport run_solve(const RunConfig& config);

struct ConvergenceRow {
  int nx;
  double dt;
  double max_error;
  double l2_error;
  std::optional<double> observed_order;  // blank on the first level
};
std::vector<ConvergenceRow> run_converge(const RunConfig& config, int levels);

struct McCompareRow {
  double x;
  double deterministic;
  double mc_mean;
  double mc_stderr;
  double z;        // (mc - det) / stderr, no allowance applied
  bool flagged;    // |mc - det| > 3 stderr + allowance
};
std::vector<McCompareRow> run_mc_compare(const RunConfig& config,
                                         const std::vector<double>& points);

struct SubcheckRow {
  double beta;
  double lambda;
  double t;
  double quadrature;
  double mittag_leffler;
  double abs_diff;
};
std::vector<SubcheckRow> run_subordination_check(
    const std::vector<double>& betas, const std::vector<double>& lambdas,
    const std::vector<double>& times, double tol = 1e-8);

// Full command-line entry point (the binary's main forwards here).
int cli_main(int argc, const char* const* argv);

}  // namespace stfrac::cli

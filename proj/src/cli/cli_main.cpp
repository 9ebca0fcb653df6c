#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "stfrac/cli.hpp"
#include "stfrac/io.hpp"
#include "stfrac/problems.hpp"

namespace stfrac::cli {

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number in list: '" + item + "'");
    }
  }
  return out;
}

RunConfig load_config(const std::string& path) {
  return parse_config_json(io::read_file(path));
}

void apply_overrides(RunConfig& c, const std::string& out, int levels,
                     const std::string& points, long particles, long seed) {
  if (!out.empty()) c.output = out;
  if (levels > 0) c.levels = levels;
  if (!points.empty()) c.points = parse_csv_doubles(points);
  if (particles > 0) {
    if (!c.mc) c.mc = MCConfig{};
    c.mc->particles = particles;
  }
  if (seed >= 0) {
    if (!c.mc) c.mc = MCConfig{};
    c.mc->seed = static_cast<std::uint64_t>(seed);
  }
}

int do_solve(const RunConfig& c) {
  const SolveReport r = run_solve(c);
  std::cout << "wrote " << r.csv_path << " and " << r.sidecar_path;
  if (r.max_error) std::cout << " (max error vs exact " << *r.max_error << ")";
  std::cout << "\n";
  return 0;
}

int do_converge(const RunConfig& c) {
  const auto rows = run_converge(c, c.levels);
  std::vector<std::vector<double>> table;
  std::cout << "nx,dt,max_error,l2_error,observed_order\n";
  for (const auto& r : rows) {
    std::cout << r.nx << "," << io::format_double(r.dt) << ","
              << io::format_double(r.max_error) << ","
              << io::format_double(r.l2_error) << ",";
    if (r.observed_order) std::cout << io::format_double(*r.observed_order);
    std::cout << "\n";
    table.push_back({static_cast<double>(r.nx), r.dt, r.max_error, r.l2_error,
                     r.observed_order ? *r.observed_order
                                      : std::numeric_limits<double>::quiet_NaN()});
  }
  io::write_table_csv(c.output, {"nx", "dt", "max_error", "l2_error",
                                 "observed_order"},
                      table);
  return 0;
}

int do_mc(const RunConfig& c) {
  if (c.points.empty())
    throw ConfigError("mc: give evaluation points (--points or config)");
  const auto rows = run_mc_compare(c, c.points);
  std::vector<std::vector<double>> table;
  bool any_flag = false;
  std::cout << "x,deterministic,mc_mean,stderr,z,flagged\n";
  for (const auto& r : rows) {
    any_flag |= r.flagged;
    std::cout << io::format_double(r.x) << ","
              << io::format_double(r.deterministic) << ","
              << io::format_double(r.mc_mean) << ","
              << io::format_double(r.mc_stderr) << ","
              << io::format_double(r.z) << "," << (r.flagged ? 1 : 0) << "\n";
    table.push_back({r.x, r.deterministic, r.mc_mean, r.mc_stderr, r.z,
                     r.flagged ? 1.0 : 0.0});
  }
  io::write_table_csv(c.output, {"x", "deterministic", "mc_mean", "stderr",
                                 "z", "flagged"},
                      table);
  if (any_flag) std::cerr << "warning: some points exceeded |z| > 3 after allowance\n";
  return 0;
}

int do_subcheck(const std::vector<double>& betas,
                const std::vector<double>& lambdas,
                const std::vector<double>& times, double tol,
                const std::string& out) {
  const auto rows = run_subordination_check(betas, lambdas, times, tol);
  std::vector<std::vector<double>> table;
  std::cout << "beta,lambda,t,quadrature,mittag_leffler,abs_diff\n";
  for (const auto& r : rows) {
    std::cout << io::format_double(r.beta) << "," << io::format_double(r.lambda)
              << "," << io::format_double(r.t) << ","
              << io::format_double(r.quadrature) << ","
              << io::format_double(r.mittag_leffler) << ","
              << io::format_double(r.abs_diff) << "\n";
    table.push_back(
        {r.beta, r.lambda, r.t, r.quadrature, r.mittag_leffler, r.abs_diff});
  }
  if (!out.empty())
    io::write_table_csv(out, {"beta", "lambda", "t", "quadrature",
                              "mittag_leffler", "abs_diff"},
                        table);
  return 0;
}

int do_bench_list() {
  for (const auto& name : registry_names()) {
    const BenchmarkProblem p = make_problem(name);
    std::cout << name << " alpha="
              << (p.op ? p.op->alpha.value() : 0.0)
              << " beta=" << p.beta.value() << " domain=[" << p.domain.left
              << "," << p.domain.right << "]"
              << " has_exact=" << (p.has_exact() ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"space-time fractional diffusion solver harness"};
  app.require_subcommand(1);

  std::string config_path, out_override, points_csv;
  int levels_override = 0;
  long particles_override = 0, seed_override = -1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON config file");
    if (needs_config) opt->required();
    sub->add_option("--out", out_override, "output path override");
    sub->add_option("--levels", levels_override, "refinement levels");
    sub->add_option("--points", points_csv, "comma-separated x values");
    sub->add_option("--particles", particles_override, "Monte Carlo particles");
    sub->add_option("--seed", seed_override, "Monte Carlo seed");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one solve");
  add_common(solve, true);
  CLI::App* conv = app.add_subcommand("converge", "refinement study");
  add_common(conv, true);
  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo vs deterministic");
  add_common(mc, true);

  CLI::App* subcheck =
      app.add_subcommand("subcheck", "subordination identity table");
  std::string betas_csv = "0.3,0.5,0.8";
  std::string lambdas_csv = "0.1,1,10";
  std::string times_csv = "0.5,1,2";
  std::string subcheck_out;
  double subcheck_tol = 1e-8;
  subcheck->add_option("--betas", betas_csv, "comma-separated betas");
  subcheck->add_option("--lambdas", lambdas_csv, "comma-separated lambdas");
  subcheck->add_option("--times", times_csv, "comma-separated times");
  subcheck->add_option("--tol", subcheck_tol, "quadrature tolerance");
  subcheck->add_option("--out", subcheck_out, "CSV output path");

  CLI::App* bench = app.add_subcommand("bench", "benchmark registry");
  CLI::App* bench_list = bench->add_subcommand("list", "list problems");
  bench->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (bench_list->parsed()) return do_bench_list();
    if (subcheck->parsed())
      return do_subcheck(parse_csv_doubles(betas_csv),
                         parse_csv_doubles(lambdas_csv),
                         parse_csv_doubles(times_csv), subcheck_tol,
                         subcheck_out);
    RunConfig c = load_config(config_path);
    apply_overrides(c, out_override, levels_override, points_csv,
                    particles_override, seed_override);
    if (solve->parsed()) return do_solve(c);
    if (conv->parsed()) return do_converge(c);
    if (mc->parsed()) return do_mc(c);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stfrac::cli

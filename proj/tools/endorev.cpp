// Command-line front end: evaluate, optimize, sweep, compare.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "endorev/core_model.hpp"
#include "endorev/optimizer.hpp"
#include "endorev/presets.hpp"
#include "endorev/run_config.hpp"
#include "endorev/sweep.hpp"

namespace {

using namespace endorev;

struct Options {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<std::string> mode;
  std::optional<std::string> flux;
  std::optional<double> tol;
  int workers = 1;
  std::optional<double> x_c;
  double report_tol = 1e-6;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "key = value run configuration file");
  cmd->add_option("--preset", o.preset, "figure preset (fig2 ... fig9)");
  cmd->add_option("--mode", o.mode, "refrigerator | engine")
      ->check(CLI::IsMember({"refrigerator", "engine", "both"}));
  cmd->add_option("--flux", o.flux, "maser | hight | powerlaw | linear")
      ->check(CLI::IsMember({"maser", "hight", "powerlaw", "linear"}));
  cmd->add_option("--tol", o.tol, "optimizer tolerance relative to the mode window");
}

// Preset machine defaults < config file < command-line flags.
RunConfig resolve(const Options& o) {
  RunConfig user;
  if (o.config_path) user = load_run_config(*o.config_path);
  if (o.mode) user.mode = *o.mode;
  if (o.flux) user.flux = *o.flux;
  if (o.out) user.out = *o.out;
  if (o.preset) {
    if (!is_preset(*o.preset)) throw InvalidInput("unknown preset '" + *o.preset + "'");
    const SweepPlan plan = plan_sweep(o.preset, user);
    RunConfig merged = plan.effective;
    merged.out = user.out;
    return merged;
  }
  validate(user);
  return user;
}

SolverOptions solver_from(const Options& o) {
  SolverOptions solver;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw InvalidInput("tol must be positive");
    solver.tol = *o.tol;
  }
  return solver;
}

void print_field(const char* name, double value) {
  std::printf("%-22s = %s\n", name, format_number(value).c_str());
}

void print_field(const char* name, const std::optional<double>& value) {
  if (value)
    print_field(name, *value);
  else
    std::printf("%-22s = n/a\n", name);
}

int cmd_evaluate(const Options& o) {
  if (!o.x_c) throw InvalidInput("x_c is required (--x-c)");
  if (!(*o.x_c > 0.0)) throw InvalidInput("x_c must be positive");
  const RunConfig config = resolve(o);
  const OperatingPoint p = operating_point(flux_from(config), machine_from(config), *o.x_c);
  print_field("x_c", p.x_c);
  print_field("x_h", p.x_h);
  print_field("flux", p.flux);
  print_field("q_c", p.q_c);
  print_field("q_h", p.q_h);
  print_field("power", p.power);
  print_field("entropy_rate", p.entropy_rate);
  std::printf("%-22s = %s\n", "mode", std::string(to_string(p.mode)).c_str());
  print_field("efficiency", p.efficiency);
  print_field("cop", p.cop);
  return 0;
}

void print_result(const OptimizationResult& r, double x_h) {
  std::printf("%-22s = %s\n", "mode", std::string(to_string(r.mode)).c_str());
  print_field("x_h", x_h);
  print_field("x_c_opt", r.x_c_opt);
  print_field("x_c_opt_over_x_h", r.x_c_opt / x_h);
  print_field("objective", r.objective);
  print_field("performance", r.performance);
  print_field("normalized", r.normalized_performance);
  print_field("bracket_lo", r.bracket_lo);
  print_field("bracket_hi", r.bracket_hi);
  std::printf("%-22s = %d\n", "iterations", r.iterations);
  print_field("tolerance_achieved", r.tolerance_achieved);
  print_field("stationarity_residual", r.stationarity_residual);
}

int cmd_optimize(const Options& o) {
  const RunConfig config = resolve(o);
  const MachineConfig machine = machine_from(config);
  const FluxModel model = flux_from(config);
  const SolverOptions solver = solver_from(o);
  const SweepMode mode = sweep_mode_from(config);
  if (mode != SweepMode::Engine) print_result(maximize_cooling_rate(model, machine, solver), machine.x_h());
  if (mode == SweepMode::Both) std::printf("\n");
  if (mode != SweepMode::Refrigerator) print_result(maximize_power(model, machine, solver), machine.x_h());
  return 0;
}

void print_report(const std::vector<CurveSummary>& report, double tolerance, std::FILE* stream) {
  std::fprintf(stream, "deviation from small-force prediction (tolerance %s):\n",
               format_number(tolerance).c_str());
  for (const CurveSummary& s : report) {
    std::fprintf(stream, "  %-12s %-12s compared=%zu failed=%zu max_rel_dev=%s mean_rel_dev=%s %s\n",
                 s.curve.c_str(), std::string(to_string(s.mode)).c_str(), s.compared, s.failed,
                 format_number(s.max_rel_dev).c_str(), format_number(s.mean_rel_dev).c_str(),
                 s.pass ? "PASS" : "FAIL");
  }
}

// Shared by sweep and compare. Returns the process exit code.
int run_sweep_command(const Options& o, bool compare_only) {
  RunConfig user;
  if (o.config_path) user = load_run_config(*o.config_path);
  if (o.mode) user.mode = *o.mode;
  if (o.flux) user.flux = *o.flux;
  if (o.out) user.out = *o.out;
  if (o.workers < 1) throw InvalidInput("workers must be >= 1");
  const SweepPlan plan = plan_sweep(o.preset, user, solver_from(o));

  std::ofstream file;
  const std::optional<std::string> out_path = user.out;
  if (out_path) {
    file.open(*out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::fprintf(stderr, "error: cannot open output file '%s'\n", out_path->c_str());
      return 1;
    }
  }

  std::vector<SweepRow> rows;
  try {
    rows = run_plan(plan, o.workers);
  } catch (const SweepError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  std::FILE* summary = stdout;
  if (out_path) {
    write_csv(file, rows, plan.variable, plan.columns, header_lines(plan));
    file.flush();
    if (!file) {
      std::fprintf(stderr, "error: failed writing '%s'\n", out_path->c_str());
      return 1;
    }
  } else if (!compare_only) {
    write_csv(std::cout, rows, plan.variable, plan.columns, header_lines(plan));
    std::cout.flush();
    summary = stderr;
  }

  std::size_t failed = 0;
  for (const SweepRow& r : rows) failed += r.error ? 1 : 0;
  std::fprintf(summary, "rows: %zu (failed: %zu)\n", rows.size(), failed);
  print_report(compare_numeric_analytic(rows, o.report_tol), o.report_tol, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endoreversible thermal machines: evaluation, optimization over the cold force, sweeps"};
  app.set_version_flag("--version", std::string(endorev::kVersion));
  app.require_subcommand(1);
  Options o;

  auto* evaluate = app.add_subcommand("evaluate", "currents and performance at one cold force");
  add_common(evaluate, o);
  evaluate->add_option("--x-c", o.x_c, "cold thermodynamic force x_c = omega_c / T_c");

  auto* optimize = app.add_subcommand("optimize", "maximize cooling rate or power over x_c");
  add_common(optimize, o);

  auto* sweep = app.add_subcommand("sweep", "write a CSV sweep and a deviation summary");
  add_common(sweep, o);
  sweep->add_option("--out", o.out, "CSV output path (stdout when absent)");
  sweep->add_option("--workers", o.workers, "parallel workers");
  sweep->add_option("--report-tol", o.report_tol, "pass/fail threshold for the deviation report");

  auto* compare = app.add_subcommand("compare", "numeric vs small-force prediction report");
  add_common(compare, o);
  compare->add_option("--out", o.out, "also write the CSV here");
  compare->add_option("--workers", o.workers, "parallel workers");
  compare->add_option("--report-tol", o.report_tol, "pass/fail threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*evaluate) return cmd_evaluate(o);
    if (*optimize) return cmd_optimize(o);
    if (*sweep) return run_sweep_command(o, false);
    if (*compare) return run_sweep_command(o, true);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

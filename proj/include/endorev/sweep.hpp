#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "endorev/asymptotics.hpp"
#include "endorev/core_model.hpp"
#include "endorev/errors.hpp"
#include "endorev/machine.hpp"
#include "endorev/optimizer.hpp"

namespace endorev {

inline constexpr std::string_view kVersion = "1.0.0";

enum class SweepVariable { XH, XC, CarnotEfficiency, CarnotCop, Dimension, CouplingRatio };
enum class SweepMode { Refrigerator, Engine, Both };
enum class GridScale { Linear, Log };

inline std::string_view column_name(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::XH: return "x_h";
    case SweepVariable::XC: return "x_c";
    case SweepVariable::CarnotEfficiency: return "eta_c";
    case SweepVariable::CarnotCop: return "eps_c";
    case SweepVariable::Dimension: return "d";
    case SweepVariable::CouplingRatio: return "gamma_ratio";
  }
  return "value";
}

class Grid {
 public:
  static Grid from_points(std::vector<double> points) {
    if (points.size() < 2) throw InvalidInput("grid needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i])) throw InvalidInput("grid points must be finite");
      if (i > 0 && !(points[i] > points[i - 1])) throw InvalidInput("grid must be strictly increasing");
    }
    Grid grid;
    grid.points_ = std::move(points);
    return grid;
  }

  static Grid spaced(double lo, double hi, int count, GridScale scale) {
    if (count < 2) throw InvalidInput("grid_n must be >= 2");
    if (!(lo < hi)) throw InvalidInput("grid_lo must be below grid_hi");
    if (scale == GridScale::Log && !(lo > 0.0)) throw InvalidInput("log grid needs grid_lo > 0");
    std::vector<double> points(static_cast<std::size_t>(count));
    const double last = count - 1;
    for (int k = 0; k < count; ++k) {
      const double t = k / last;
      points[k] = scale == GridScale::Linear
                      ? lo + (hi - lo) * t
                      : std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    points.front() = lo;
    points.back() = hi;
    return from_points(std::move(points));
  }

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  Grid() = default;
  std::vector<double> points_;
};

/// One curve: a flux law, a machine template, the variable swept over a grid
/// and the operating mode(s). Sweeping x_c evaluates operating points instead
/// of optimizing.
struct SweepSpec {
  std::string curve;
  FluxModel flux;
  MachineConfig base;
  SweepVariable variable;
  Grid grid;
  SweepMode mode;
  SolverOptions solver{};
};

inline void validate(const SweepSpec& spec) {
  if (spec.variable == SweepVariable::CarnotCop && spec.mode != SweepMode::Refrigerator)
    throw InvalidInput("eps_c sweeps require refrigerator mode");
  if (spec.variable == SweepVariable::CarnotEfficiency && spec.mode != SweepMode::Engine)
    throw InvalidInput("eta_c sweeps require engine mode");
}

struct SweepRow {
  std::string curve;
  double swept = 0.0;
  Mode mode = Mode::Refrigerator;
  CarnotFigures carnot{};
  std::optional<OperatingPoint> point;  // at the optimum, or at the swept x_c
  std::optional<OptimizationResult> optimum;
  std::optional<double> analytic;  // small-force normalized performance
  std::optional<double> abs_dev;
  std::optional<double> rel_dev;
  std::optional<std::string> error;
};

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::pair<MachineConfig, FluxModel> apply_swept(const SweepSpec& spec, double value) {
  const MachineConfig& base = spec.base;
  switch (spec.variable) {
    case SweepVariable::XH:
      return {base.with_x_h(value), spec.flux};
    case SweepVariable::XC:
      return {base, spec.flux};
    case SweepVariable::CarnotEfficiency:
      return {base.with_cold_temperature(
                  cold_temperature_from_efficiency(base.hot().temperature, value)),
              spec.flux};
    case SweepVariable::CarnotCop:
      return {base.with_cold_temperature(cold_temperature_from_cop(base.hot().temperature, value)),
              spec.flux};
    case SweepVariable::Dimension: {
      if (const auto* p = std::get_if<FluxModel::PowerLaw>(&spec.flux.variant()))
        return {base, FluxModel::power_law(p->prefactor, value)};
      if (value != std::round(value) || value < 1.0)
        throw InvalidInput("bath dimensionality must be a positive integer");
      const int d = static_cast<int>(value);
      return {base.with_dimensionality(d, d), spec.flux};
    }
    case SweepVariable::CouplingRatio:
      return {base.with_couplings(value * base.hot().coupling, base.hot().coupling), spec.flux};
  }
  throw InvalidInput("unknown sweep variable");
}

inline double prediction_exponent(const FluxModel& model, const MachineConfig& config) {
  if (const auto* p = std::get_if<FluxModel::PowerLaw>(&model.variant())) return p->exponent;
  if (std::holds_alternative<FluxModel::Linear>(model.variant())) return 1.0;
  return config.cold().dimensionality;
}

// Re-asserts the core-model invariants on a computed row.
inline void check_row_invariants(const OperatingPoint& p, std::optional<Mode> expected_mode) {
  const double scale = std::abs(p.q_c) + std::abs(p.q_h);
  if (std::abs(p.q_c + p.q_h + p.power) > 1e-12 * scale)
    throw EvaluationError("energy closure violated");
  if (p.entropy_rate < 0.0) throw EvaluationError("negative entropy production");
  if (expected_mode && p.mode != *expected_mode) throw EvaluationError("optimum left its mode window");
}

inline SweepRow evaluate_row(const SweepSpec& spec, double value, Mode mode) {
  SweepRow row;
  row.curve = spec.curve;
  row.swept = value;
  row.mode = mode;
  try {
    auto [config, model] = apply_swept(spec, value);
    row.carnot = config.carnot();
    if (spec.variable == SweepVariable::XC) {
      row.point = operating_point(model, config, value);
      row.mode = row.point->mode;
      check_row_invariants(*row.point, std::nullopt);
      return row;
    }
    row.optimum = optimize(model, config, mode, spec.solver);
    row.point = operating_point(model, config, row.optimum->x_c_opt);
    check_row_invariants(*row.point, mode);
    const double figure = mode == Mode::Refrigerator ? row.carnot.cop : row.carnot.efficiency;
    row.analytic = powerlaw_prediction(mode, prediction_exponent(model, config), figure)
                       .normalized_performance;
    row.abs_dev = std::abs(row.optimum->normalized_performance - *row.analytic);
    row.rel_dev = *row.abs_dev / std::abs(*row.analytic);
  } catch (const std::exception& e) {
    row.point.reset();
    row.optimum.reset();
    row.analytic.reset();
    row.abs_dev.reset();
    row.rel_dev.reset();
    row.error = e.what();
  }
  return row;
}

}  // namespace detail

/// Evaluates every grid point (both modes when requested) and returns rows in
/// grid order. Failed points carry an error message instead of numbers.
/// Output is independent of `workers`.
inline std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec, int workers = 1) {
  validate(spec);
  std::vector<std::pair<double, Mode>> tasks;
  for (double value : spec.grid.points()) {
    if (spec.mode != SweepMode::Engine) tasks.emplace_back(value, Mode::Refrigerator);
    if (spec.mode != SweepMode::Refrigerator) tasks.emplace_back(value, Mode::Engine);
  }
  if (spec.variable == SweepVariable::XC) {
    tasks.clear();
    for (double value : spec.grid.points()) tasks.emplace_back(value, Mode::Refrigerator);
  }

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      rows[i] = detail::evaluate_row(spec, tasks[i].first, tasks[i].second);
  };
  const int n_workers = std::clamp(workers, 1, static_cast<int>(tasks.size()));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }

  return rows;
}

inline bool all_failed(const std::vector<SweepRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.has_value(); });
}

/// As run_sweep_rows, but a sweep in which every point failed is an error.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 1) {
  std::vector<SweepRow> rows = run_sweep_rows(spec, workers);
  if (all_failed(rows))
    throw SweepError("every grid point of curve '" + spec.curve + "' failed: " + *rows.front().error);
  return rows;
}

struct CurveSummary {
  std::string curve;
  Mode mode;
  std::size_t compared = 0;  // rows with an analytic prediction
  std::size_t failed = 0;    // rows with an error
  double max_rel_dev = 0.0;
  double mean_rel_dev = 0.0;
  bool pass = true;
};

/// Max/mean relative deviation from the small-force prediction per curve and
/// mode, with pass/fail against `tolerance`. Rows without predictions are
/// skipped; empty input gives an empty report.
inline std::vector<CurveSummary> compare_numeric_analytic(const std::vector<SweepRow>& rows,
                                                          double tolerance) {
  std::vector<CurveSummary> report;
  for (const SweepRow& row : rows) {
    if (!row.error && !row.rel_dev) continue;
    auto it = std::find_if(report.begin(), report.end(), [&](const CurveSummary& s) {
      return s.curve == row.curve && s.mode == row.mode;
    });
    if (it == report.end()) {
      report.push_back({row.curve, row.mode});
      it = std::prev(report.end());
    }
    if (row.error) {
      ++it->failed;
      continue;
    }
    ++it->compared;
    it->max_rel_dev = std::max(it->max_rel_dev, *row.rel_dev);
    it->mean_rel_dev += *row.rel_dev;
  }
  for (CurveSummary& s : report) {
    if (s.compared > 0) s.mean_rel_dev /= static_cast<double>(s.compared);
    s.pass = s.compared > 0 && s.failed == 0 && s.max_rel_dev <= tolerance;
  }
  return report;
}

// ---------------------------------------------------------------------------
// CSV

/// 12 significant digits, scientific notation.
inline std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

namespace detail {

inline std::optional<double> normalized(std::optional<double> value, double figure) {
  if (!value) return std::nullopt;
  return *value / figure;
}

inline std::string csv_escape(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = c == ',' ? ';' : ' ';
  return text;
}

inline std::string cell(const SweepRow& row, std::string_view column, std::string_view swept_name) {
  const auto num = [](std::optional<double> v) { return v ? format_number(*v) : std::string(); };
  const OperatingPoint* p = row.point ? &*row.point : nullptr;
  const OptimizationResult* o = row.optimum ? &*row.optimum : nullptr;

  if (column == swept_name) return format_number(row.swept);
  if (column == "curve") return csv_escape(row.curve);
  if (column == "mode") return std::string(to_string(row.mode));
  if (column == "error") return row.error ? csv_escape(*row.error) : std::string();
  if (column == "x_c_opt") return o ? format_number(o->x_c_opt) : "";
  if (column == "q_c_opt") return o && p ? format_number(p->q_c) : "";
  if (column == "power_opt") return o && p ? format_number(p->power) : "";
  if (column == "power_out_opt") return o && p ? format_number(-p->power) : "";
  if (column == "flux_opt") return o && p ? format_number(p->flux) : "";
  if (column == "objective") return o ? format_number(o->objective) : "";
  if (column == "performance") return o ? format_number(o->performance) : "";
  if (column == "performance_norm") return o ? format_number(o->normalized_performance) : "";
  if (column == "stationarity") return o ? format_number(o->stationarity_residual) : "";
  if (column == "cop") return p ? num(p->cop) : "";
  if (column == "cop_norm") return p ? num(normalized(p->cop, row.carnot.cop)) : "";
  if (column == "eff") return p ? num(p->efficiency) : "";
  if (column == "eff_norm") return p ? num(normalized(p->efficiency, row.carnot.efficiency)) : "";
  if (column == "analytic") return num(row.analytic);
  if (column == "abs_dev") return num(row.abs_dev);
  if (column == "rel_dev") return num(row.rel_dev);
  if (column == "q_c") return p ? format_number(p->q_c) : "";
  if (column == "q_h") return p ? format_number(p->q_h) : "";
  if (column == "power") return p ? format_number(p->power) : "";
  if (column == "flux") return p ? format_number(p->flux) : "";
  if (column == "entropy_rate") return p ? format_number(p->entropy_rate) : "";
  if (column == "op_mode") return p ? std::string(to_string(p->mode)) : "";
  throw InvalidInput("unknown CSV column '" + std::string(column) + "'");
}

}  // namespace detail

/// Writes `#`-prefixed header lines, one row of column names, then data rows.
inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, SweepVariable variable,
                      const std::vector<std::string>& columns,
                      const std::vector<std::string>& header_lines) {
  for (const std::string& line : header_lines) out << "# " << line << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  const std::string_view swept = column_name(variable);
  for (const SweepRow& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << detail::cell(row, columns[i], swept);
    out << '\n';
  }
}

}  // namespace endorev

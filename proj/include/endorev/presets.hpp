#pragma once

// Figure presets: parameter sets of the published figures bundled as sweep
// plans, plus the plan for a free-form x_h sweep.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endorev/errors.hpp"
#include "endorev/machine.hpp"
#include "endorev/optimizer.hpp"
#include "endorev/run_config.hpp"
#include "endorev/sweep.hpp"

namespace endorev {

inline constexpr std::array<std::string_view, 8> kPresetNames = {"fig2", "fig3", "fig4", "fig5",
                                                                 "fig6", "fig7", "fig8", "fig9"};

struct SweepPlan {
  std::string preset;  // empty for a free-form sweep
  SweepVariable variable = SweepVariable::XH;
  SweepMode mode = SweepMode::Refrigerator;
  std::vector<SweepSpec> curves;
  std::vector<std::string> columns;
  RunConfig effective;
  std::vector<std::string> curve_notes;
  SolverOptions solver;
};

namespace detail {

struct CurveDef {
  std::string label;
  RunConfig overlay;
};

inline RunConfig figure_machine() {
  RunConfig c;
  c.t_c = 5.0;
  c.t_h = 10.0;
  c.omega_h = 1.0;
  c.d_c = 3;
  c.d_h = 3;
  c.gamma_c = 1.0;
  c.gamma_h = 1.0;
  c.flux = "maser";
  return c;
}

inline void set_grid(RunConfig& c, double lo, double hi, int n, const char* scale) {
  c.grid_lo = lo;
  c.grid_hi = hi;
  c.grid_n = n;
  c.grid_scale = scale;
}

inline std::vector<CurveDef> dimension_curves() {
  std::vector<CurveDef> curves;
  for (int d = 1; d <= 3; ++d) {
    RunConfig overlay;
    overlay.d_c = d;
    overlay.d_h = d;
    curves.push_back({"d=" + std::to_string(d), overlay});
  }
  return curves;
}

inline std::vector<CurveDef> carnot_curves(Mode mode, double t_h) {
  std::vector<CurveDef> curves;
  if (mode == Mode::Refrigerator) {
    for (double eps : {0.05, 19.0}) {
      RunConfig overlay;
      overlay.t_c = cold_temperature_from_cop(t_h, eps);
      curves.push_back({eps == 0.05 ? "eps_c=0.05" : "eps_c=19", overlay});
    }
  } else {
    for (double eta : {0.05, 0.95}) {
      RunConfig overlay;
      overlay.t_c = cold_temperature_from_efficiency(t_h, eta);
      curves.push_back({eta == 0.05 ? "eta_c=0.05" : "eta_c=0.95", overlay});
    }
  }
  return curves;
}

inline std::vector<std::string> optimum_columns(SweepVariable variable, SweepMode mode,
                                                std::string_view preset) {
  const std::string x(column_name(variable));
  if (mode == SweepMode::Both)
    return {x, "mode", "x_c_opt", "objective", "performance", "performance_norm", "analytic", "abs_dev",
            "rel_dev"};
  const bool fridge = mode == SweepMode::Refrigerator;
  if (preset == "fig3")
    return fridge ? std::vector<std::string>{x, "x_c_opt", "q_c_opt", "cop", "cop_norm"}
                  : std::vector<std::string>{x, "x_c_opt", "power_opt", "power_out_opt", "eff", "eff_norm"};
  if (preset == "fig4")
    return fridge ? std::vector<std::string>{x, "x_c_opt", "q_c_opt"}
                  : std::vector<std::string>{x, "x_c_opt", "power_opt", "power_out_opt"};
  if (preset == "fig5")
    return fridge ? std::vector<std::string>{x, "x_c_opt", "cop"}
                  : std::vector<std::string>{x, "x_c_opt", "eff"};
  if (preset == "fig6")
    return fridge ? std::vector<std::string>{x, "x_c_opt", "cop", "cop_norm"}
                  : std::vector<std::string>{x, "x_c_opt", "eff", "eff_norm"};
  if (preset == "fig7") return {x, "x_c_opt", "flux_opt"};
  if (preset == "fig8" || preset == "fig9")
    return fridge ? std::vector<std::string>{x, "x_c_opt", "cop_norm", "analytic", "abs_dev", "rel_dev"}
                  : std::vector<std::string>{x, "x_c_opt", "eff_norm", "analytic", "abs_dev", "rel_dev"};
  return fridge ? std::vector<std::string>{x, "x_c_opt", "q_c_opt", "cop", "cop_norm", "analytic",
                                           "abs_dev", "rel_dev"}
                : std::vector<std::string>{x, "x_c_opt", "power_opt", "power_out_opt", "eff", "eff_norm",
                                           "analytic", "abs_dev", "rel_dev"};
}

}  // namespace detail

inline bool is_preset(std::string_view name) {
  return std::find(kPresetNames.begin(), kPresetNames.end(), name) != kPresetNames.end();
}

/// Builds the curves of a sweep. Keys the user sets override the preset; if
/// the user pins the key a preset varies between curves (t_c for fig5/fig6,
/// d_c/d_h for fig7-fig9) only that single curve is produced.
inline SweepPlan plan_sweep(const std::optional<std::string>& preset, const RunConfig& user,
                            const SolverOptions& solver = {}) {
  validate(user);
  SweepPlan plan;
  plan.preset = preset.value_or("");
  plan.solver = solver;
  const std::string name = plan.preset;
  if (!name.empty() && !is_preset(name)) throw InvalidInput("unknown preset '" + name + "'");

  RunConfig defaults = name.empty() ? default_run_config() : detail::figure_machine();
  std::vector<detail::CurveDef> curves;
  bool pins_curve_key = false;

  if (name.empty()) {
    plan.variable = SweepVariable::XH;
  } else if (name == "fig2") {
    plan.variable = SweepVariable::XC;
  } else if (name == "fig3") {
    plan.variable = SweepVariable::XH;
    detail::set_grid(defaults, 1e-3, 1e3, 200, "log");
  } else if (name == "fig4") {
    plan.variable = SweepVariable::XH;
    defaults.mode = "engine";
    detail::set_grid(defaults, 1e-3, 10.0, 200, "log");
  } else if (name == "fig5" || name == "fig6" || name == "fig7") {
    plan.variable = SweepVariable::XH;
    detail::set_grid(defaults, 1e-3, 10.0, 200, "log");
  } else {  // fig8, fig9
    if (name == "fig9") defaults.gamma_c = 0.01;
  }
  if (!defaults.mode) defaults.mode = "refrigerator";

  RunConfig effective = merge(defaults, user);
  plan.mode = sweep_mode_from(effective);

  if (name == "fig2") {
    // x_c from the refrigerator window through the engine window up to omega_c = omega_h.
    const double upper = *effective.omega_h / *effective.t_c;
    RunConfig grid;
    detail::set_grid(grid, upper / 200.0, upper, 200, "linear");
    effective = merge(merge(defaults, grid), user);
  } else if (name == "fig8" || name == "fig9") {
    if (plan.mode == SweepMode::Both)
      throw InvalidInput(name + " sweeps eps_c (refrigerator) or eta_c (engine); choose one mode");
    RunConfig grid;
    if (plan.mode == SweepMode::Refrigerator) {
      plan.variable = SweepVariable::CarnotCop;
      detail::set_grid(grid, 0.2, 20.0, 100, "linear");
    } else {
      plan.variable = SweepVariable::CarnotEfficiency;
      detail::set_grid(grid, 0.0099, 0.99, 100, "linear");
    }
    effective = merge(merge(defaults, grid), user);
  }

  if (name == "fig5" || name == "fig6") {
    if (plan.mode == SweepMode::Both)
      throw InvalidInput(name + " curves are per Carnot figure of one mode; choose one mode");
    pins_curve_key = user.t_c.has_value();
    if (!pins_curve_key)
      curves = detail::carnot_curves(plan.mode == SweepMode::Engine ? Mode::Engine : Mode::Refrigerator,
                                     *effective.t_h);
  } else if (name == "fig7" || name == "fig8" || name == "fig9") {
    pins_curve_key = user.d_c.has_value() || user.d_h.has_value();
    if (!pins_curve_key) curves = detail::dimension_curves();
  }
  if (curves.empty()) curves.push_back({name.empty() ? "custom" : name, RunConfig{}});

  validate(effective);
  plan.effective = effective;
  const Grid grid = grid_from(effective);
  for (const auto& def : curves) {
    const RunConfig curve_config = merge(effective, def.overlay);
    SweepSpec spec{def.label, flux_from(curve_config), machine_from(curve_config), plan.variable, grid,
                   plan.mode, solver};
    validate(spec);
    plan.curves.push_back(std::move(spec));
    if (curves.size() > 1) {
      std::string note = "curve " + def.label + ":";
      for (const std::string& line : to_lines(def.overlay)) note += " " + line + ";";
      plan.curve_notes.push_back(note);
    }
  }

  if (plan.variable == SweepVariable::XC)
    plan.columns = {"x_c", "q_c", "q_h", "power", "flux", "entropy_rate", "op_mode", "cop", "eff"};
  else
    plan.columns = detail::optimum_columns(plan.variable, plan.mode, name);
  if (plan.curves.size() > 1) plan.columns.insert(plan.columns.begin(), "curve");
  plan.columns.push_back("error");
  return plan;
}

/// Rows of every curve in curve order.
inline std::vector<SweepRow> run_plan(const SweepPlan& plan, int workers = 1) {
  std::vector<SweepRow> rows;
  for (const SweepSpec& spec : plan.curves) {
    std::vector<SweepRow> part = run_sweep_rows(spec, workers);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (all_failed(rows)) throw SweepError("every grid point failed: " + *rows.front().error);
  return rows;
}

/// Header comment block: generator, the parameters consumed (config syntax,
/// enough to rerun the sweep) and per-curve overrides.
inline std::vector<std::string> header_lines(const SweepPlan& plan) {
  std::vector<std::string> lines;
  lines.push_back("endorev sweep " + std::string(kVersion));
  lines.push_back("preset = " + (plan.preset.empty() ? std::string("none") : plan.preset));
  lines.push_back("tol = " + detail::format_exact(plan.solver.tol));
  lines.push_back("rerun: endorev sweep" + (plan.preset.empty() ? std::string() : " --preset " + plan.preset) +
                  " --tol " + detail::format_exact(plan.solver.tol) +
                  " --config <file holding the key = value lines below>");
  RunConfig echoed = plan.effective;
  echoed.out.reset();
  // Keys that vary between curves are listed in the curve notes instead.
  if (plan.curves.size() > 1) {
    if (plan.preset == "fig5" || plan.preset == "fig6") {
      echoed.t_c.reset();
    } else {
      echoed.d_c.reset();
      echoed.d_h.reset();
    }
  }
  for (const std::string& line : to_lines(echoed)) lines.push_back(line);
  for (const std::string& note : plan.curve_notes) lines.push_back(note);
  return lines;
}

}  // namespace endorev

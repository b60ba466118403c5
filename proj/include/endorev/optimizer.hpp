#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "endorev/core_model.hpp"
#include "endorev/errors.hpp"
#include "endorev/machine.hpp"
#include "endorev/scalar_search.hpp"

namespace endorev {

struct SolverOptions {
  double tol = 1e-10;  // golden-section tolerance, relative to the mode window
  int max_iter = 200;
  int prescan_points = 64;
  double stationarity_limit = 1e-6;
};

struct OptimizationResult {
  double x_c_opt;
  double objective;  // cooling rate q_c, or delivered power -P
  Mode mode;         // Refrigerator or Engine
  double performance;             // COP or efficiency at x_c_opt
  double normalized_performance;  // divided by the Carnot figure
  double bracket_lo;  // search bracket in x_c
  double bracket_hi;
  int iterations;
  double tolerance_achieved;     // final bracket width over the window width
  double stationarity_residual;  // relative residual of dF/dx_c = 0
};

namespace detail {

inline void require_search_mode(Mode mode) {
  if (mode != Mode::Refrigerator && mode != Mode::Engine)
    throw InvalidInput("optimization mode must be refrigerator or engine");
}

// Relative residual of the stationarity condition, I' by central difference.
inline double stationarity_residual(const FluxModel& model, const MachineConfig& config,
                                    Mode mode, double x_c) {
  const double h = 1e-6 * x_c;
  const auto current = [&](double x) { return flux(model, config, x); };
  const double i0 = current(x_c);
  const double di = central_derivative(current, x_c, h);
  double a, b;
  if (mode == Mode::Refrigerator) {
    a = i0;
    b = x_c * di;
  } else {
    const double ratio = 1.0 - config.carnot_efficiency();
    a = -ratio * i0;
    b = (config.x_h() - ratio * x_c) * di;
  }
  const double scale = std::abs(a) + std::abs(b);
  return scale > 0.0 ? std::abs(a + b) / scale : 0.0;
}

// Number of separate rises-then-falls in a sampled sequence, ignoring steps
// below `noise`.
inline int count_peaks(std::span<const double> values, double noise) {
  int peaks = 0;
  int last_direction = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double step = values[i] - values[i - 1];
    const int direction = step > noise ? 1 : (step < -noise ? -1 : 0);
    if (direction == 0) continue;
    if (last_direction == 1 && direction == -1) ++peaks;
    last_direction = direction;
  }
  if (last_direction == 1) ++peaks;  // still rising at the upper end
  return peaks;
}

inline OptimizationResult maximize_in_window(const FluxModel& model, const MachineConfig& config,
                                             Mode mode, const SolverOptions& options) {
  const double x_h = config.x_h();
  const double delta = 1e-9 * x_h;
  const double lo = mode == Mode::Refrigerator ? delta : x_h + delta;
  const double hi = mode == Mode::Refrigerator ? x_h - delta : config.engine_window_upper() - delta;
  if (!(lo < hi))
    throw OptimizationError(OptimizationError::Kind::BracketFailure,
                            std::string(to_string(mode)) + " window is empty at this resolution");

  const double width = hi - lo;
  const auto to_x = [&](double u) { return std::clamp(lo + u * width, lo, hi); };
  const auto objective_x = [&](double x) {
    const double current = flux(model, config, x);
    if (mode == Mode::Refrigerator) return config.cold().temperature * x * current;
    return (config.cold().temperature * x - config.hot().temperature * x_h) * current;
  };
  const auto objective = [&](double u) { return objective_x(to_x(u)); };

  // Coarse scan: locates the peak neighbourhood and rejects multimodal shapes.
  const int n = std::max(options.prescan_points, 3);
  std::vector<double> grid(n), values(n);
  for (int k = 0; k < n; ++k) {
    grid[k] = static_cast<double>(k) / (n - 1);
    values[k] = objective(grid[k]);
    if (!std::isfinite(values[k]))
      throw OptimizationError(OptimizationError::Kind::NonFinite, "objective is not finite in scan");
  }
  const auto best = std::max_element(values.begin(), values.end());
  if (!(*best > 0.0))
    throw OptimizationError(OptimizationError::Kind::BracketFailure,
                            std::string(to_string(mode)) + " objective is non-positive throughout the window");
  if (count_peaks(values, 1e-9 * *best) > 1)
    throw OptimizationError(OptimizationError::Kind::Multimodal,
                            std::string(to_string(mode)) + " objective has several maxima in the window");

  const int k = static_cast<int>(best - values.begin());
  const double scan_lo = grid[std::max(k - 1, 0)];
  const double scan_hi = grid[std::min(k + 1, n - 1)];
  ScalarMaximum golden = scalar_maximize(objective, scan_lo, scan_hi, options.tol, options.max_iter);

  // Golden section cannot resolve the peak below ~sqrt(eps) of its width;
  // refine on the sign change of the five-point derivative.
  double u_opt = golden.x;
  double final_width = golden.hi - golden.lo;
  int iterations = golden.iterations;
  const double span = scan_hi - scan_lo;
  const double h = std::min({1e-3 * span, u_opt / 3.0, (1.0 - u_opt) / 3.0});
  if (h > 0.0) {
    const auto slope = [&](double u) { return five_point_derivative(objective, u, h); };
    for (double margin = std::max(final_width, 1e-7 * span); margin <= span; margin *= 10.0) {
      const double a = std::max(u_opt - margin, scan_lo + 2.0 * h);
      const double b = std::min(u_opt + margin, scan_hi - 2.0 * h);
      if (!(a < b)) break;
      if (slope(a) > 0.0 && slope(b) < 0.0) {
        const RootBracket root = bisect_decreasing_root(slope, a, b, options.max_iter);
        u_opt = root.x;
        final_width = root.width;
        iterations += root.iterations;
        break;
      }
    }
  }

  OptimizationResult result{};
  result.mode = mode;
  result.x_c_opt = to_x(u_opt);
  result.objective = objective_x(result.x_c_opt);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = iterations;
  result.tolerance_achieved = final_width;
  if (mode == Mode::Refrigerator) {
    result.performance = cop(config, result.x_c_opt, x_h);
    result.normalized_performance = result.performance / config.carnot_cop();
  } else {
    result.performance = efficiency(config, result.x_c_opt, x_h);
    result.normalized_performance = result.performance / config.carnot_efficiency();
  }
  result.stationarity_residual = stationarity_residual(model, config, mode, result.x_c_opt);
  if (!(result.stationarity_residual <= options.stationarity_limit))
    throw OptimizationError(OptimizationError::Kind::NonConvergence,
                            "stationarity residual " + std::to_string(result.stationarity_residual) +
                                " exceeds limit at x_c = " + std::to_string(result.x_c_opt));
  return result;
}

}  // namespace detail

/// Maximizes the cooling rate q_c = T_c x_c I over the refrigerator window (0, x_h).
inline OptimizationResult maximize_cooling_rate(const FluxModel& model, const MachineConfig& config,
                                                const SolverOptions& options = {}) {
  return detail::maximize_in_window(model, config, Mode::Refrigerator, options);
}

/// Maximizes the delivered power -P = (T_c x_c - T_h x_h) I over the engine
/// window (x_h, x_h T_h / T_c).
inline OptimizationResult maximize_power(const FluxModel& model, const MachineConfig& config,
                                         const SolverOptions& options = {}) {
  return detail::maximize_in_window(model, config, Mode::Engine, options);
}

inline OptimizationResult optimize(const FluxModel& model, const MachineConfig& config, Mode mode,
                                   const SolverOptions& options = {}) {
  detail::require_search_mode(mode);
  return detail::maximize_in_window(model, config, mode, options);
}

struct C1Estimate {
  double c1;
  double c2;  // diagnostic only
  Mode mode;
  std::vector<double> x_h_samples;
  double residual;  // RMS misfit of x_c_opt
};

// Geometric grid 1e-3 ... 1e-1, ten points.
inline std::vector<double> default_c1_samples() {
  std::vector<double> samples(10);
  for (int k = 0; k < 10; ++k) samples[k] = 1e-3 * std::pow(10.0, 2.0 * k / 9.0);
  return samples;
}

/// Least-squares fit of x_c_opt(x_h) = C1 x_h + C2 x_h^2 over small x_h. The
/// template's omega_h is replaced by x_h * T_h for every sample.
inline C1Estimate estimate_c1(const FluxModel& model, const MachineConfig& config_template, Mode mode,
                              std::span<const double> x_h_samples, const SolverOptions& options = {}) {
  detail::require_search_mode(mode);
  if (x_h_samples.size() < 2)
    throw OptimizationError(OptimizationError::Kind::IllConditioned, "C1 fit needs at least two samples");
  for (double x : x_h_samples)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("x_h samples must be positive");

  std::vector<double> optima;
  optima.reserve(x_h_samples.size());
  for (double x_h : x_h_samples)
    optima.push_back(optimize(model, config_template.with_x_h(x_h), mode, options).x_c_opt);

  // Equivalent weighted fit of z = x_c / x_h = C1 + C2 x_h with weights x_h^2.
  double sw = 0.0, sx = 0.0, sz = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const double x = x_h_samples[i], w = x * x, z = optima[i] / x;
    sw += w;
    sx += w * x;
    sz += w * z;
    sxx += w * x * x;
  }
  const double x_mean = sx / sw, z_mean = sz / sw;
  double spread = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const double x = x_h_samples[i], w = x * x, z = optima[i] / x;
    spread += w * (x - x_mean) * (x - x_mean);
    cross += w * (x - x_mean) * (z - z_mean);
  }
  if (!(spread > 1e-12 * sxx))
    throw OptimizationError(OptimizationError::Kind::IllConditioned,
                            "C1 fit is ill-conditioned (samples too clustered)");

  C1Estimate estimate{};
  estimate.mode = mode;
  estimate.c2 = cross / spread;
  estimate.c1 = z_mean - estimate.c2 * x_mean;
  estimate.x_h_samples.assign(x_h_samples.begin(), x_h_samples.end());
  double sq = 0.0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const double x = x_h_samples[i];
    const double misfit = optima[i] - (estimate.c1 * x + estimate.c2 * x * x);
    sq += misfit * misfit;
  }
  estimate.residual = std::sqrt(sq / static_cast<double>(optima.size()));
  return estimate;
}

}  // namespace endorev

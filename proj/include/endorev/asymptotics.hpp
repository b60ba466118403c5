#pragma once

// Closed-form small-force predictions for machines whose flux behaves as
// I ~ I0 x_c^(d-1) (x_h - x_c). These serve as oracles for the numerical
// optimizer.

#include <cmath>
#include <limits>
#include <numbers>

#include "endorev/errors.hpp"
#include "endorev/machine.hpp"

namespace endorev {

struct AsymptoticPrediction {
  Mode mode;
  double d;
  double carnot_figure;  // eps_C for refrigerators, eta_C for engines
  double c1;
  double normalized_performance;
};

/// 1 - sqrt(1 - eta_C), evaluated as eta_C / (1 + sqrt(1 - eta_C)).
inline double curzon_ahlborn(double eta_c) {
  if (!(eta_c >= 0.0 && eta_c < 1.0)) throw InvalidInput("eta_c must lie in [0, 1)");
  return eta_c / (1.0 + std::sqrt(1.0 - eta_c));
}

inline AsymptoticPrediction linear_refrigerator(double eps_c) {
  if (!(eps_c >= 0.0) || !std::isfinite(eps_c)) throw InvalidInput("eps_c must be non-negative");
  return {Mode::Refrigerator, 1.0, eps_c, 0.5, 1.0 / (2.0 + eps_c)};
}

inline AsymptoticPrediction linear_engine(double eta_c) {
  if (!(eta_c >= 0.0 && eta_c < 1.0)) throw InvalidInput("eta_c must lie in [0, 1)");
  return {Mode::Engine, 1.0, eta_c, (2.0 - eta_c) / (2.0 * (1.0 - eta_c)), 0.5};
}

inline AsymptoticPrediction powerlaw_refrigerator(double d, double eps_c) {
  if (!(d >= 1.0) || !std::isfinite(d)) throw InvalidInput("d must be >= 1");
  if (d == 1.0) return linear_refrigerator(eps_c);
  if (!(eps_c >= 0.0) || !std::isfinite(eps_c)) throw InvalidInput("eps_c must be non-negative");
  return {Mode::Refrigerator, d, eps_c, d / (d + 1.0), d / (d + 1.0 + eps_c)};
}

/// Engine prediction for the power-law flux. The normalized efficiency
///   (2 + d eta - sqrt(R)) / (2 (d+1) eta),  R = d^2 eta^2 - 4 eta + 4,
/// is evaluated in the rationalized form 2 / (2 + d eta + sqrt(R)), which has
/// no cancellation and reaches 1/2 at eta_C = 0.
inline AsymptoticPrediction powerlaw_engine(double d, double eta_c) {
  if (!(d >= 1.0) || !std::isfinite(d)) throw InvalidInput("d must be >= 1");
  if (d == 1.0) return linear_engine(eta_c);
  if (!(eta_c >= 0.0 && eta_c < 1.0)) throw InvalidInput("eta_c must lie in [0, 1)");
  const double root = std::sqrt(d * d * eta_c * eta_c - 4.0 * eta_c + 4.0);
  const double c1 = (d * (2.0 - eta_c) + root) / (2.0 * (d + 1.0) * (1.0 - eta_c));
  const double normalized = 2.0 / (2.0 + d * eta_c + root);
  return {Mode::Engine, d, eta_c, c1, normalized};
}

inline AsymptoticPrediction powerlaw_prediction(Mode mode, double d, double carnot_figure) {
  switch (mode) {
    case Mode::Refrigerator: return powerlaw_refrigerator(d, carnot_figure);
    case Mode::Engine: return powerlaw_engine(d, carnot_figure);
    default: throw InvalidInput("prediction mode must be refrigerator or engine");
  }
}

/// Principal branch of the Lambert W function, w e^w = x for x >= -1/e.
/// Halley iteration from a branch-point series (near -1/e), log1p (moderate
/// x) or the asymptotic log form (large x).
inline double lambert_w0(double x) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (std::isnan(x) || x < -inv_e) throw InvalidInput("lambert_w0 requires x >= -1/e");
  if (!std::isfinite(x)) throw InvalidInput("lambert_w0 requires finite x");
  if (x == 0.0) return 0.0;

  double w;
  const double branch = 2.0 * (std::numbers::e * x + 1.0);
  if (branch < 0.5) {
    const double p = std::sqrt(std::max(branch, 0.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  if (w <= -1.0) return -1.0;

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (!std::isfinite(next)) break;
    if (std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(next)) {
      w = next;
      break;
    }
    w = std::max(next, -1.0);
  }
  return w;
}

/// Large-x_h limit of the maser refrigerator's optimal force for d_c = d_h = d:
/// the root of (d+1)(1 - e^{-x}) = x, i.e. d + 1 + W0(-(d+1) e^{-(d+1)}).
/// Independent of the bath temperatures.
inline double refrigerator_saturation(double d) {
  if (!(d >= 1.0) || !std::isfinite(d)) throw InvalidInput("d must be >= 1");
  return d + 1.0 + lambert_w0(-(d + 1.0) * std::exp(-(d + 1.0)));
}

// The literature form 5 (d + 1 + W0(...)) / T_c. It carries the prefactor of a
// T_c = 5 parameter set and agrees with refrigerator_saturation only there.
inline double refrigerator_saturation_as_printed(double d, double t_c) {
  if (!(t_c > 0.0)) throw InvalidInput("t_c must be positive");
  return 5.0 * refrigerator_saturation(d) / t_c;
}

/// High-temperature reduction of the maser flux:
///   I = G_c (x_h - x_c) / (3 (1 + G_c/G_h)),  G_a = gamma_a T_a^d_a x_a^(d_a - 1).
/// Evaluated as G_c G_h (x_h - x_c) / (3 (G_c + G_h)) with the quotient taken
/// first so the product never overflows.
inline double high_temp_flux(const MachineConfig& config, double x_c, double x_h) {
  if (!(x_c > 0.0)) throw InvalidInput("x_c must be positive");
  if (!(x_h > 0.0)) throw InvalidInput("x_h must be positive");
  const BathSpec& cold = config.cold();
  const BathSpec& hot = config.hot();
  const double g_c = cold.coupling * std::pow(cold.temperature, cold.dimensionality) *
                     std::pow(x_c, cold.dimensionality - 1);
  const double g_h = hot.coupling * std::pow(hot.temperature, hot.dimensionality) *
                     std::pow(x_h, hot.dimensionality - 1);
  const double denom = g_c + g_h;
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw EvaluationError("high-temperature flux denominator is degenerate");
  const double flux = (g_h / denom) * g_c * (x_h - x_c) / 3.0;
  if (!std::isfinite(flux)) throw EvaluationError("high-temperature flux is not finite");
  return flux == 0.0 ? 0.0 : flux;
}

}  // namespace endorev

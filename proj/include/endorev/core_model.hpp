#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "endorev/asymptotics.hpp"
#include "endorev/errors.hpp"
#include "endorev/machine.hpp"

namespace endorev {

/// Which current law I(x_c, x_h) drives the machine.
class FluxModel {
 public:
  struct ThreeLevelMaser {};
  struct HighTemperature {};
  struct PowerLaw {
    double prefactor;
    double exponent;
  };
  struct Linear {
    double prefactor;
  };
  using Variant = std::variant<ThreeLevelMaser, HighTemperature, PowerLaw, Linear>;

  static FluxModel maser() { return FluxModel(ThreeLevelMaser{}); }
  static FluxModel high_temperature() { return FluxModel(HighTemperature{}); }

  static FluxModel power_law(double prefactor, double exponent) {
    if (!(prefactor > 0.0) || !std::isfinite(prefactor))
      throw InvalidInput("power-law prefactor I0 must be positive");
    if (!(exponent >= 1.0) || !std::isfinite(exponent))
      throw InvalidInput("power-law exponent d must be >= 1");
    return FluxModel(PowerLaw{prefactor, exponent});
  }

  static FluxModel linear(double prefactor) {
    if (!(prefactor > 0.0) || !std::isfinite(prefactor))
      throw InvalidInput("linear prefactor I0 must be positive");
    return FluxModel(Linear{prefactor});
  }

  const Variant& variant() const noexcept { return variant_; }

  std::string_view name() const {
    return std::visit(
        [](const auto& v) -> std::string_view {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ThreeLevelMaser>) return "maser";
          else if constexpr (std::is_same_v<T, HighTemperature>) return "hight";
          else if constexpr (std::is_same_v<T, PowerLaw>) return "powerlaw";
          else return "linear";
        },
        variant_);
  }

 private:
  explicit FluxModel(Variant v) : variant_(v) {}
  Variant variant_;
};

namespace detail {

// exp(-x_c) - exp(-x_h) without cancellation near x_c = x_h and without
// 0 * inf when one exponent underflows.
inline double boltzmann_difference(double x_c, double x_h) {
  if (x_c <= x_h) return std::exp(-x_c) * -std::expm1(x_c - x_h);
  return -(std::exp(-x_h) * -std::expm1(x_h - x_c));
}

inline double maser_flux(const MachineConfig& config, double x_c) {
  const double x_h = config.x_h();
  const double rate_c = relaxation_rate(config.cold(), x_c * config.cold().temperature);
  const double rate_h = relaxation_rate(config.hot(), config.omega_h());
  const double denom = rate_h * (1.0 + 2.0 * std::exp(-x_h)) +
                       rate_c * (1.0 + 2.0 * std::exp(-x_c));
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw EvaluationError("maser flux denominator is degenerate at x_c = " + std::to_string(x_c));
  return (rate_h / denom) * rate_c * boltzmann_difference(x_c, x_h);
}

}  // namespace detail

/// Stationary flux I(x_c, x_h). Positive in the refrigerator window, zero at
/// x_c = x_h and negative beyond, for every variant.
inline double flux(const FluxModel& model, const MachineConfig& config, double x_c) {
  if (!(x_c > 0.0) || !std::isfinite(x_c)) throw InvalidInput("x_c must be positive and finite");
  const double x_h = config.x_h();
  const double value = std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FluxModel::ThreeLevelMaser>) {
          return detail::maser_flux(config, x_c);
        } else if constexpr (std::is_same_v<T, FluxModel::HighTemperature>) {
          return high_temp_flux(config, x_c, x_h);
        } else if constexpr (std::is_same_v<T, FluxModel::PowerLaw>) {
          return v.prefactor * std::pow(x_c, v.exponent - 1.0) * (x_h - x_c);
        } else {
          return v.prefactor * (x_h - x_c);
        }
      },
      model.variant());
  if (!std::isfinite(value)) throw EvaluationError("flux is not finite at x_c = " + std::to_string(x_c));
  return value == 0.0 ? 0.0 : value;  // no signed zero
}

inline Mode classify(const MachineConfig& config, double x_c) {
  const double x_h = config.x_h();
  if (x_c < x_h) return Mode::Refrigerator;
  if (x_c == x_h) return Mode::Carnot;
  if (x_c < config.engine_window_upper()) return Mode::Engine;
  return Mode::Dissipator;
}

struct OperatingPoint {
  double x_c;
  double x_h;
  double flux;
  double q_c;
  double q_h;
  double power;  // positive when injected into the machine
  double entropy_rate;
  Mode mode;
  std::optional<double> efficiency;  // engine window and Carnot point
  std::optional<double> cop;         // refrigerator window and Carnot point
};

/// Currents, entropy production and performance at one cold force. Heat and
/// power are positive when flowing into the working medium.
inline OperatingPoint operating_point(const FluxModel& model, const MachineConfig& config, double x_c) {
  const double current = flux(model, config, x_c);
  OperatingPoint point{};
  point.x_c = x_c;
  point.x_h = config.x_h();
  point.flux = current;
  point.q_c = config.cold().temperature * x_c * current;
  // + 0.0 turns a negative zero at the Carnot point into +0.
  point.q_h = -config.hot().temperature * point.x_h * current + 0.0;
  point.power = -point.q_h - point.q_c + 0.0;
  point.entropy_rate = (point.x_h - x_c) * current + 0.0;
  point.mode = classify(config, x_c);
  switch (point.mode) {
    case Mode::Refrigerator:
      point.cop = cop(config, x_c, point.x_h);
      break;
    case Mode::Carnot:
      point.cop = config.carnot_cop();
      point.efficiency = config.carnot_efficiency();
      break;
    case Mode::Engine:
      point.efficiency = efficiency(config, x_c, point.x_h);
      break;
    case Mode::Dissipator:
      break;
  }
  return point;
}

}  // namespace endorev

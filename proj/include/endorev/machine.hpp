#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "endorev/errors.hpp"

namespace endorev {

// Units throughout: hbar = k_B = 1, so temperatures and frequencies share
// one energy unit and forces x = omega / T are dimensionless.

enum class Mode { Refrigerator, Carnot, Engine, Dissipator };

inline std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Refrigerator: return "refrigerator";
    case Mode::Carnot: return "carnot";
    case Mode::Engine: return "engine";
    case Mode::Dissipator: return "dissipator";
  }
  return "unknown";
}

struct BathSpec {
  double temperature = 1.0;
  int dimensionality = 1;
  double coupling = 1.0;
};

inline void validate(const BathSpec& bath, std::string_view name) {
  const std::string prefix(name);
  if (!(bath.temperature > 0.0) || !std::isfinite(bath.temperature))
    throw InvalidInput(prefix + ".temperature must be positive and finite");
  if (bath.dimensionality < 1)
    throw InvalidInput(prefix + ".dimensionality must be >= 1");
  if (!(bath.coupling >= 0.0) || !std::isfinite(bath.coupling))
    throw InvalidInput(prefix + ".coupling must be non-negative and finite");
}

struct CarnotFigures {
  double efficiency;  // eta_C = 1 - T_c/T_h
  double cop;         // eps_C = T_c/(T_h - T_c)
};

inline CarnotFigures carnot_figures(double cold_temperature, double hot_temperature) {
  if (!(cold_temperature > 0.0))
    throw InvalidInput("t_c must be positive");
  if (!(hot_temperature > cold_temperature))
    throw InvalidInput("t_h must exceed t_c (empty engine window)");
  return {1.0 - cold_temperature / hot_temperature,
          cold_temperature / (hot_temperature - cold_temperature)};
}

/// Two baths plus the hot transition frequency. Construction validates the
/// invariants; instances are immutable afterwards.
class MachineConfig {
 public:
  MachineConfig(BathSpec cold, BathSpec hot, double omega_h)
      : cold_(cold), hot_(hot), omega_h_(omega_h) {
    validate(cold_, "cold");
    validate(hot_, "hot");
    if (!(omega_h_ > 0.0) || !std::isfinite(omega_h_))
      throw InvalidInput("omega_h must be positive and finite");
    carnot_ = carnot_figures(cold_.temperature, hot_.temperature);
    if (!(x_h() > 0.0))
      throw InvalidInput("x_h = omega_h / t_h underflows to zero");
  }

  const BathSpec& cold() const noexcept { return cold_; }
  const BathSpec& hot() const noexcept { return hot_; }
  double omega_h() const noexcept { return omega_h_; }
  double x_h() const noexcept { return omega_h_ / hot_.temperature; }
  double carnot_efficiency() const noexcept { return carnot_.efficiency; }
  double carnot_cop() const noexcept { return carnot_.cop; }
  CarnotFigures carnot() const noexcept { return carnot_; }

  // Upper edge of the engine window, x_h T_h / T_c (omega_c = omega_h).
  double engine_window_upper() const noexcept {
    return omega_h_ / cold_.temperature;
  }

  MachineConfig with_omega_h(double omega_h) const { return {cold_, hot_, omega_h}; }
  MachineConfig with_x_h(double x_h) const { return with_omega_h(x_h * hot_.temperature); }

  MachineConfig with_cold_temperature(double t_c) const {
    BathSpec cold = cold_;
    cold.temperature = t_c;
    return {cold, hot_, omega_h_};
  }

  MachineConfig with_dimensionality(int d_c, int d_h) const {
    BathSpec cold = cold_, hot = hot_;
    cold.dimensionality = d_c;
    hot.dimensionality = d_h;
    return {cold, hot, omega_h_};
  }

  MachineConfig with_couplings(double gamma_c, double gamma_h) const {
    BathSpec cold = cold_, hot = hot_;
    cold.coupling = gamma_c;
    hot.coupling = gamma_h;
    return {cold, hot, omega_h_};
  }

 private:
  BathSpec cold_;
  BathSpec hot_;
  double omega_h_;
  CarnotFigures carnot_{};
};

inline CarnotFigures carnot_figures(const MachineConfig& config) { return config.carnot(); }

// T_c that realises a given Carnot efficiency at fixed T_h.
inline double cold_temperature_from_efficiency(double hot_temperature, double carnot_efficiency) {
  if (!(hot_temperature > 0.0)) throw InvalidInput("t_h must be positive");
  if (!(carnot_efficiency > 0.0 && carnot_efficiency < 1.0))
    throw InvalidInput("eta_c must lie in (0, 1)");
  return (1.0 - carnot_efficiency) * hot_temperature;
}

// T_c that realises a given Carnot COP at fixed T_h.
inline double cold_temperature_from_cop(double hot_temperature, double carnot_cop) {
  if (!(hot_temperature > 0.0)) throw InvalidInput("t_h must be positive");
  if (!(carnot_cop > 0.0) || !std::isfinite(carnot_cop))
    throw InvalidInput("eps_c must be positive and finite");
  return hot_temperature * carnot_cop / (1.0 + carnot_cop);
}

/// Bosonic relaxation rate gamma * omega^d * (1 + N(omega)) with
/// N = 1 / (exp(omega/T) - 1). At omega = 0 the analytic limit is returned:
/// gamma*T for d = 1, zero for d >= 2.
inline double relaxation_rate(const BathSpec& bath, double omega) {
  if (!(omega >= 0.0)) throw InvalidInput("omega must be non-negative");
  if (omega == 0.0)
    return bath.dimensionality == 1 ? bath.coupling * bath.temperature : 0.0;
  // 1 + N = 1 / (1 - exp(-omega/T))
  const double x = omega / bath.temperature;
  const double rate =
      bath.coupling * std::pow(omega, bath.dimensionality) / -std::expm1(-x);
  if (!std::isfinite(rate))
    throw EvaluationError("relaxation rate overflows at omega = " + std::to_string(omega));
  return rate;
}

/// Engine efficiency 1 - (1 - eta_C) x_c / x_h, defined for any positive forces.
inline double efficiency(const MachineConfig& config, double x_c, double x_h) {
  if (!(x_c > 0.0)) throw InvalidInput("x_c must be positive");
  if (!(x_h > 0.0)) throw InvalidInput("x_h must be positive");
  return 1.0 - (1.0 - config.carnot_efficiency()) * x_c / x_h;
}

/// Refrigerator COP eps_C / ((1 + eps_C) x_h / x_c - eps_C).
inline double cop(const MachineConfig& config, double x_c, double x_h) {
  if (!(x_c > 0.0)) throw InvalidInput("x_c must be positive");
  if (!(x_h > 0.0)) throw InvalidInput("x_h must be positive");
  const double eps_c = config.carnot_cop();
  const double denom = (1.0 + eps_c) * x_h / x_c - eps_c;
  if (!(denom > 0.0))
    throw EvaluationError("COP denominator is not positive (x_c outside refrigerator window)");
  return eps_c / denom;
}

}  // namespace endorev

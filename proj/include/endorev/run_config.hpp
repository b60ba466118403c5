#pragma once

// Flat `key = value` run configuration with `#` comments.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endorev/core_model.hpp"
#include "endorev/errors.hpp"
#include "endorev/machine.hpp"
#include "endorev/sweep.hpp"

namespace endorev {

struct RunConfig {
  std::optional<double> t_c, t_h, omega_h;
  std::optional<int> d_c, d_h;
  std::optional<double> gamma_c, gamma_h;
  std::optional<std::string> flux, mode;
  std::optional<double> grid_lo, grid_hi;
  std::optional<int> grid_n;
  std::optional<std::string> grid_scale, out;
};

inline constexpr std::array<std::string_view, 14> kConfigKeys = {
    "t_c", "t_h", "omega_h", "d_c", "d_h", "gamma_c", "gamma_h",
    "flux", "mode", "grid_lo", "grid_hi", "grid_n", "grid_scale", "out"};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw InvalidInput(std::string(key) + ": '" + std::string(text) + "' is not a finite number");
  return value;
}

inline int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput(std::string(key) + ": '" + std::string(text) + "' is not an integer");
  return value;
}

inline std::string one_of(std::string_view key, std::string_view text,
                          std::initializer_list<std::string_view> allowed) {
  for (std::string_view a : allowed)
    if (text == a) return std::string(text);
  std::string msg = std::string(key) + ": '" + std::string(text) + "' is not one of";
  for (std::string_view a : allowed) msg += " " + std::string(a);
  throw InvalidInput(msg);
}

inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline void set_value(RunConfig& config, std::string_view key, std::string_view value) {
  using namespace detail;
  if (key == "t_c") config.t_c = parse_double(key, value);
  else if (key == "t_h") config.t_h = parse_double(key, value);
  else if (key == "omega_h") config.omega_h = parse_double(key, value);
  else if (key == "d_c") config.d_c = parse_int(key, value);
  else if (key == "d_h") config.d_h = parse_int(key, value);
  else if (key == "gamma_c") config.gamma_c = parse_double(key, value);
  else if (key == "gamma_h") config.gamma_h = parse_double(key, value);
  else if (key == "flux") config.flux = one_of(key, value, {"maser", "hight", "powerlaw", "linear"});
  else if (key == "mode") config.mode = one_of(key, value, {"refrigerator", "engine", "both"});
  else if (key == "grid_lo") config.grid_lo = parse_double(key, value);
  else if (key == "grid_hi") config.grid_hi = parse_double(key, value);
  else if (key == "grid_n") config.grid_n = parse_int(key, value);
  else if (key == "grid_scale") config.grid_scale = one_of(key, value, {"linear", "log"});
  else if (key == "out") config.out = std::string(value);
  else throw InvalidInput("unknown config key '" + std::string(key) + "'");
}

/// Checks the constraints that do not depend on other keys.
inline void validate(const RunConfig& c) {
  const auto positive = [](const std::optional<double>& v, const char* key) {
    if (v && !(*v > 0.0)) throw InvalidInput(std::string(key) + " must be positive");
  };
  positive(c.t_c, "t_c");
  positive(c.t_h, "t_h");
  positive(c.omega_h, "omega_h");
  positive(c.gamma_c, "gamma_c");
  positive(c.gamma_h, "gamma_h");
  if (c.d_c && *c.d_c < 1) throw InvalidInput("d_c must be >= 1");
  if (c.d_h && *c.d_h < 1) throw InvalidInput("d_h must be >= 1");
  if (c.grid_n && *c.grid_n < 2) throw InvalidInput("grid_n must be >= 2");
  if (c.t_c && c.t_h && !(*c.t_h > *c.t_c)) throw InvalidInput("t_h must exceed t_c");
  if (c.grid_lo && c.grid_hi && !(*c.grid_lo < *c.grid_hi))
    throw InvalidInput("grid_lo must be below grid_hi");
}

inline RunConfig parse_run_config(std::string_view text) {
  RunConfig config;
  std::vector<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidInput("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw InvalidInput("duplicate config key '" + key + "'");
    seen.push_back(key);
    set_value(config, key, value);
  }
  validate(config);
  return config;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

/// Keys set in `overrides` replace those in `base`.
inline RunConfig merge(RunConfig base, const RunConfig& overrides) {
  const auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.t_c, overrides.t_c);
  take(base.t_h, overrides.t_h);
  take(base.omega_h, overrides.omega_h);
  take(base.d_c, overrides.d_c);
  take(base.d_h, overrides.d_h);
  take(base.gamma_c, overrides.gamma_c);
  take(base.gamma_h, overrides.gamma_h);
  take(base.flux, overrides.flux);
  take(base.mode, overrides.mode);
  take(base.grid_lo, overrides.grid_lo);
  take(base.grid_hi, overrides.grid_hi);
  take(base.grid_n, overrides.grid_n);
  take(base.grid_scale, overrides.grid_scale);
  take(base.out, overrides.out);
  return base;
}

// Values used when neither preset nor user sets a key.
inline RunConfig default_run_config() {
  RunConfig c;
  c.t_c = 5.0;
  c.t_h = 10.0;
  c.omega_h = 1.0;
  c.d_c = 3;
  c.d_h = 3;
  c.gamma_c = 1.0;
  c.gamma_h = 1.0;
  c.flux = "maser";
  c.mode = "refrigerator";
  c.grid_lo = 1e-3;
  c.grid_hi = 10.0;
  c.grid_n = 200;
  c.grid_scale = "log";
  return c;
}

/// Set keys in canonical order, in config-file syntax.
inline std::vector<std::string> to_lines(const RunConfig& c) {
  std::vector<std::string> lines;
  const auto num = [&](const char* key, const std::optional<double>& v) {
    if (v) lines.push_back(std::string(key) + " = " + detail::format_exact(*v));
  };
  const auto integer = [&](const char* key, const std::optional<int>& v) {
    if (v) lines.push_back(std::string(key) + " = " + std::to_string(*v));
  };
  const auto text = [&](const char* key, const std::optional<std::string>& v) {
    if (v) lines.push_back(std::string(key) + " = " + *v);
  };
  num("t_c", c.t_c);
  num("t_h", c.t_h);
  num("omega_h", c.omega_h);
  integer("d_c", c.d_c);
  integer("d_h", c.d_h);
  num("gamma_c", c.gamma_c);
  num("gamma_h", c.gamma_h);
  text("flux", c.flux);
  text("mode", c.mode);
  num("grid_lo", c.grid_lo);
  num("grid_hi", c.grid_hi);
  integer("grid_n", c.grid_n);
  text("grid_scale", c.grid_scale);
  text("out", c.out);
  return lines;
}

inline MachineConfig machine_from(const RunConfig& user) {
  const RunConfig c = merge(default_run_config(), user);
  validate(c);
  return MachineConfig({*c.t_c, *c.d_c, *c.gamma_c}, {*c.t_h, *c.d_h, *c.gamma_h}, *c.omega_h);
}

// PowerLaw and Linear take I0 from gamma_c; PowerLaw takes its exponent from d_c.
inline FluxModel flux_from(const RunConfig& user) {
  const RunConfig c = merge(default_run_config(), user);
  if (*c.flux == "maser") return FluxModel::maser();
  if (*c.flux == "hight") return FluxModel::high_temperature();
  if (*c.flux == "powerlaw") return FluxModel::power_law(*c.gamma_c, *c.d_c);
  return FluxModel::linear(*c.gamma_c);
}

inline SweepMode sweep_mode_from(const RunConfig& user) {
  const std::string mode = user.mode.value_or("refrigerator");
  if (mode == "engine") return SweepMode::Engine;
  if (mode == "both") return SweepMode::Both;
  return SweepMode::Refrigerator;
}

inline Mode mode_from(const RunConfig& user) {
  const std::string mode = user.mode.value_or("refrigerator");
  if (mode == "both") throw InvalidInput("mode must be refrigerator or engine here");
  return mode == "engine" ? Mode::Engine : Mode::Refrigerator;
}

inline Grid grid_from(const RunConfig& user) {
  const RunConfig c = merge(default_run_config(), user);
  validate(c);
  return Grid::spaced(*c.grid_lo, *c.grid_hi, *c.grid_n,
                      *c.grid_scale == "log" ? GridScale::Log : GridScale::Linear);
}

}  // namespace endorev

#pragma once

// Parameter sweeps over a base configuration, and the named figure presets.

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "hexnet/errors.hpp"
#include "hexnet/params.hpp"

namespace hexnet {

// Sweepable parameters and their command-line units:
//   B_T        linear bias
//   delta_T    THz fraction
//   N_A        AP count
//   v_0        metres
//   sigma_eps  degrees, applied to both the AP and the UE
//   theta      dB
inline constexpr std::string_view kSweepParameters[] = {"B_T", "delta_T", "N_A", "v_0", "sigma_eps", "theta"};

class SweepError : public Error {
 public:
  enum class Kind { EmptySweep, UnknownParameter, Malformed, BelowMinTrials };

  SweepError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  NetworkConfig base;
  std::string label;  // sweep_param column; names the series for multi-curve presets
};

inline bool is_sweep_parameter(std::string_view name) {
  for (auto p : kSweepParameters) {
    if (p == name) return true;
  }
  return false;
}

// Returns base with `parameter` set to `value` (command-line units); validated.
inline NetworkConfig apply_sweep_value(NetworkConfig cfg, std::string_view parameter, double value) {
  if (parameter == "B_T") {
    cfg.radio.B_T = value;
  } else if (parameter == "delta_T") {
    cfg.geometry.delta_T = value;
  } else if (parameter == "N_A") {
    if (value != std::round(value)) {
      throw ConfigError(ConfigError::Kind::Malformed, "N_A", "N_A sweep value " + std::to_string(value) + " is not an integer");
    }
    cfg.geometry.N_A = static_cast<int>(value);
  } else if (parameter == "v_0") {
    cfg.geometry.v_0 = value;
  } else if (parameter == "sigma_eps") {
    cfg.antenna.sigma_eps_T = cfg.antenna.sigma_eps_U = deg_to_rad(value);
  } else if (parameter == "theta") {
    cfg.radio.theta = from_db(value);
  } else {
    throw SweepError(SweepError::Kind::UnknownParameter, "unknown sweep parameter '" + std::string(parameter) + "'");
  }
  return validate(cfg);
}

namespace detail {

inline double parse_sweep_number(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SweepError(SweepError::Kind::Malformed, "bad number '" + std::string(text) + "' in sweep");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

// Grid of `count` points from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  return v;
}

inline std::vector<double> logspace(double start, double stop, int count) {
  std::vector<double> v;
  const double a = std::log10(start);
  const double b = std::log10(stop);
  for (double e : linspace(a, b, count)) v.push_back(std::pow(10.0, e));
  if (count >= 1) v.front() = start;
  if (count >= 2) v.back() = stop;
  return v;
}

// Value list syntax: "a,b,c", "lin:start:stop:count" or "log:start:stop:count".
inline std::vector<double> parse_values(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw SweepError(SweepError::Kind::EmptySweep, "sweep has no values");
  if (text.starts_with("lin:") || text.starts_with("log:")) {
    const auto parts = detail::split(text.substr(4), ':');
    if (parts.size() != 3) {
      throw SweepError(SweepError::Kind::Malformed, "grid sweep needs start:stop:count, got '" + std::string(text) + "'");
    }
    const double start = detail::parse_sweep_number(parts[0]);
    const double stop = detail::parse_sweep_number(parts[1]);
    const double count = detail::parse_sweep_number(parts[2]);
    if (count != std::round(count) || count < 0) {
      throw SweepError(SweepError::Kind::Malformed, "grid count must be a nonnegative integer");
    }
    if (count == 0) throw SweepError(SweepError::Kind::EmptySweep, "sweep grid has zero points");
    if (text.starts_with("log:") && !(start > 0.0 && stop > 0.0)) {
      throw SweepError(SweepError::Kind::Malformed, "log grid needs positive endpoints");
    }
    return text.starts_with("lin:") ? linspace(start, stop, static_cast<int>(count))
                                    : logspace(start, stop, static_cast<int>(count));
  }
  std::vector<double> values;
  for (auto part : detail::split(text, ',')) {
    if (detail::trim(part).empty()) continue;
    values.push_back(detail::parse_sweep_number(part));
  }
  if (values.empty()) throw SweepError(SweepError::Kind::EmptySweep, "sweep has no values");
  return values;
}

// Parses "param=values" against a base config and checks every point.
inline SweepSpec parse_sweep(std::string_view text, const NetworkConfig& base) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw SweepError(SweepError::Kind::Malformed, "sweep must look like param=values, got '" + std::string(text) + "'");
  }
  SweepSpec spec;
  spec.parameter = std::string(detail::trim(text.substr(0, eq)));
  if (!is_sweep_parameter(spec.parameter)) {
    throw SweepError(SweepError::Kind::UnknownParameter, "unknown sweep parameter '" + spec.parameter + "'");
  }
  spec.values = parse_values(text.substr(eq + 1));
  spec.base = base;
  spec.label = spec.parameter;
  for (double v : spec.values) apply_sweep_value(base, spec.parameter, v);
  return spec;
}

inline std::string format_series_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// One curve of a multi-curve figure: `param` swept with `fixed` held at the given values.
inline SweepSpec series(const NetworkConfig& base, std::string parameter, std::vector<double> values,
                        std::vector<std::pair<std::string, double>> fixed) {
  SweepSpec spec;
  spec.parameter = std::move(parameter);
  spec.values = std::move(values);
  spec.base = base;
  spec.label = spec.parameter;
  if (!fixed.empty()) {
    spec.label += "[";
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      spec.base = apply_sweep_value(spec.base, fixed[i].first, fixed[i].second);
      if (i > 0) spec.label += ";";
      spec.label += fixed[i].first + "=" + format_series_value(fixed[i].second);
    }
    spec.label += "]";
  }
  for (double v : spec.values) apply_sweep_value(spec.base, spec.parameter, v);
  return spec;
}

inline constexpr std::string_view kPresets[] = {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};

// fig4/fig5: association and coverage against the THz bias for several
// steering errors; fig6/fig7: coverage and rate against the THz fraction for
// several AP counts; fig8/fig9: coverage and rate against the UE offset.
inline std::vector<SweepSpec> preset(std::string_view name, const NetworkConfig& base) {
  std::vector<SweepSpec> out;
  if (name == "fig4") {
    for (double s : {0.0, 10.0, 30.0}) out.push_back(series(base, "B_T", logspace(1e-2, 1e2, 21), {{"sigma_eps", s}}));
  } else if (name == "fig5") {
    for (double d : {0.5, 0.8}) {
      for (double s : {0.0, 10.0, 30.0}) {
        out.push_back(series(base, "B_T", logspace(1e-2, 1e2, 21), {{"delta_T", d}, {"sigma_eps", s}}));
      }
    }
  } else if (name == "fig6" || name == "fig7") {
    for (double n : {10.0, 20.0, 30.0}) {
      NetworkConfig b = base;
      b.geometry.delta_T = 0.0;  // keeps the N_A change valid before delta_T is swept
      out.push_back(series(b, "delta_T", linspace(0.0, 1.0, 11), {{"N_A", n}}));
    }
  } else if (name == "fig8" || name == "fig9") {
    for (double d : {0.2, 0.5, 0.8}) {
      out.push_back(series(base, "v_0", linspace(0.0, base.geometry.r_d, 17), {{"delta_T", d}}));
    }
  } else {
    throw SweepError(SweepError::Kind::UnknownParameter, "unknown preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace hexnet

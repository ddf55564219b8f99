#pragma once

// Scenario parameters of the coexisting RF/THz indoor network, the
// key = value configuration document, and the constants every engine shares.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "hexnet/errors.hpp"

namespace hexnet {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s
inline constexpr int kMaxNakagamiShape = 10;

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double dbm_to_watt(double dbm) { return from_db(dbm - 30.0); }
inline double watt_to_dbm(double w) { return to_db(w) + 30.0; }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct GeometryParams {
  double r_d = 80.0;     // disk radius [m]
  double h_A = 4.5;      // AP ceiling height [m]
  double h_U = 1.4;      // UE height [m]
  double v_0 = 0.0;      // UE horizontal offset from the disk center [m]
  int N_A = 20;          // total AP count
  double delta_T = 0.8;  // fraction of THz APs

  // Number of THz APs. Validation guarantees delta_T * N_A is integral.
  int n_thz() const { return static_cast<int>(std::lround(delta_T * N_A)); }
  int n_rf() const { return N_A - n_thz(); }

  bool operator==(const GeometryParams&) const = default;
};

struct RadioParams {
  double P_T = dbm_to_watt(5.0);  // THz transmit power [W]
  double P_R = dbm_to_watt(5.0);  // RF transmit power [W]
  double f_T = 1.05e12;           // [Hz]
  double f_R = 2.1e9;             // [Hz]
  double W_T = 0.5e9;             // [Hz]
  double W_R = 40e6;              // [Hz]
  double k_a = 0.07512;           // molecular absorption [1/m]
  double alpha_R = 2.7;
  double alpha_L = 2.0;
  double alpha_N = 4.0;
  int m_L = 3;
  int m_N = 1;
  double sigma2_T = 4e-11;  // noise power [W]
  double sigma2_R = 4e-11;  // noise power [W]
  double B_T = 1.0;         // THz association bias
  double theta = 1.0;       // SINR threshold, linear

  bool operator==(const RadioParams&) const = default;
};

struct BlockageParams {
  double lambda_B = 0.3;  // blocker density [1/m^2]
  double r_B = 0.22;      // blocker radius [m]
  double h_B = 1.7;       // blocker height [m]

  bool operator==(const BlockageParams&) const = default;
};

struct AntennaParams {
  double g_T_max = from_db(25.0);
  double g_T_min = from_db(-10.0);
  double g_U_max = from_db(15.0);
  double g_U_min = from_db(-10.0);
  double phi_T = deg_to_rad(10.0);  // beamwidths [rad]
  double phi_U = deg_to_rad(33.0);
  double sigma_eps_T = 0.0;  // beam-steering error std-dev [rad]
  double sigma_eps_U = 0.0;

  bool operator==(const AntennaParams&) const = default;
};

struct NetworkConfig {
  GeometryParams geometry;
  RadioParams radio;
  BlockageParams blockage;
  AntennaParams antenna;

  bool operator==(const NetworkConfig&) const = default;
};

struct DerivedConstants {
  double gamma_T;  // c^2 / (4 pi f_T)^2
  double gamma_R;  // c^2 / (4 pi f_R)^2
  double beta;     // blockage exponent of the LOS probability
  double delta_h;  // h_A - h_U [m]
};

inline double free_space_gain(double frequency) {
  const double d = 4.0 * std::numbers::pi * frequency;
  return kSpeedOfLight * kSpeedOfLight / (d * d);
}

inline DerivedConstants derived_constants(const NetworkConfig& cfg) {
  const auto& g = cfg.geometry;
  const auto& b = cfg.blockage;
  const double delta_h = g.h_A - g.h_U;
  return DerivedConstants{
      .gamma_T = free_space_gain(cfg.radio.f_T),
      .gamma_R = free_space_gain(cfg.radio.f_R),
      .beta = 2.0 * b.lambda_B * b.r_B * std::abs(b.h_B - g.h_U) / std::abs(delta_h),
      .delta_h = delta_h,
  };
}

namespace detail {

[[noreturn]] inline void out_of_range(const std::string& key, const std::string& bound) {
  throw ConfigError(ConfigError::Kind::OutOfRange, key, "parameter '" + key + "' out of range: " + bound);
}

inline void require(bool ok, const char* key, const char* bound) {
  if (!ok) out_of_range(key, bound);
}

}  // namespace detail

// Checks every invariant of the scenario; throws ConfigError naming the
// offending key. Returns the config unchanged so it can be used inline.
inline const NetworkConfig& validate(const NetworkConfig& cfg) {
  using detail::require;
  const auto& g = cfg.geometry;
  require(g.r_d > 0.0, "r_d", "r_d > 0");
  require(g.v_0 >= 0.0 && g.v_0 <= g.r_d, "v_0", "0 <= v_0 <= r_d");
  require(g.h_U >= 0.0, "h_U", "h_U >= 0");
  require(g.h_A > g.h_U, "h_A", "h_A > h_U");
  require(g.N_A >= 1, "N_A", "N_A >= 1");
  require(g.delta_T >= 0.0 && g.delta_T <= 1.0, "delta_T", "0 <= delta_T <= 1");
  const double n_thz = g.delta_T * g.N_A;
  if (std::abs(n_thz - std::round(n_thz)) > 1e-9) {
    throw ConfigError(ConfigError::Kind::NonIntegerThzCount, "delta_T",
                      "delta_T * N_A = " + std::to_string(n_thz) + " is not an integer THz AP count");
  }

  const auto& r = cfg.radio;
  require(r.P_T > 0.0, "P_T", "P_T > 0");
  require(r.P_R > 0.0, "P_R", "P_R > 0");
  require(r.f_T > 0.0, "f_T", "f_T > 0");
  require(r.f_R > 0.0, "f_R", "f_R > 0");
  require(r.W_T > 0.0, "W_T", "W_T > 0");
  require(r.W_R > 0.0, "W_R", "W_R > 0");
  require(r.k_a >= 0.0, "k_a", "k_a >= 0");
  require(r.alpha_R >= 2.0, "alpha_R", "alpha_R >= 2");
  require(r.alpha_L >= 2.0, "alpha_L", "alpha_L >= 2");
  require(r.alpha_N >= 2.0, "alpha_N", "alpha_N >= 2");
  require(r.m_L >= 1 && r.m_L <= kMaxNakagamiShape, "m_L", "1 <= m_L <= 10");
  require(r.m_N >= 1 && r.m_N <= kMaxNakagamiShape, "m_N", "1 <= m_N <= 10");
  require(r.sigma2_T > 0.0, "sigma2_T", "sigma2_T > 0");
  require(r.sigma2_R > 0.0, "sigma2_R", "sigma2_R > 0");
  require(r.B_T >= 0.0, "B_T", "B_T >= 0");
  require(r.theta > 0.0, "theta", "theta > 0");

  const auto& b = cfg.blockage;
  require(b.lambda_B >= 0.0, "lambda_B", "lambda_B >= 0");
  require(b.r_B >= 0.0, "r_B", "r_B >= 0");
  require(b.h_B > 0.0, "h_B", "h_B > 0");

  const auto& a = cfg.antenna;
  require(a.g_T_min > 0.0, "g_T_min", "g_T_min > 0");
  require(a.g_T_max >= a.g_T_min, "g_T_max", "g_T_max >= g_T_min");
  require(a.g_U_min > 0.0, "g_U_min", "g_U_min > 0");
  require(a.g_U_max >= a.g_U_min, "g_U_max", "g_U_max >= g_U_min");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  require(a.phi_T > 0.0 && a.phi_T <= two_pi, "phi_T", "0 < phi_T <= 2 pi");
  require(a.phi_U > 0.0 && a.phi_U <= two_pi, "phi_U", "0 < phi_U <= 2 pi");
  require(a.sigma_eps_T >= 0.0, "sigma_eps_T", "sigma_eps_T >= 0");
  require(a.sigma_eps_U >= 0.0, "sigma_eps_U", "sigma_eps_U >= 0");
  return cfg;
}

// The scenario used throughout the numerical results: r_d = 80 m, N_A = 20,
// delta_T = 0.8, k_a = 0.07512 1/m, B_T = 1.
inline NetworkConfig table3_config() { return NetworkConfig{}; }

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view text, const std::string& key) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(ConfigError::Kind::Malformed, key, "cannot parse value '" + std::string(text) + "' of '" + key + "'");
  }
  return value;
}

enum class Unit { Plain, Dbm, Db, Deg };

struct KeySpec {
  std::string_view section;
  std::string_view name;
  bool allow_dbm = false;
  bool allow_db = false;
  bool allow_deg = false;
};

inline constexpr KeySpec kKeys[] = {
    {"geometry", "r_d"},
    {"geometry", "h_A"},
    {"geometry", "h_U"},
    {"geometry", "v_0"},
    {"geometry", "N_A"},
    {"geometry", "delta_T"},
    {"radio", "P_T", true},
    {"radio", "P_R", true},
    {"radio", "f_T"},
    {"radio", "f_R"},
    {"radio", "W_T"},
    {"radio", "W_R"},
    {"radio", "k_a"},
    {"radio", "alpha_R"},
    {"radio", "alpha_L"},
    {"radio", "alpha_N"},
    {"radio", "m_L"},
    {"radio", "m_N"},
    {"radio", "sigma2_T", true},
    {"radio", "sigma2_R", true},
    {"radio", "B_T", false, true},
    {"radio", "theta", false, true},
    {"blockage", "lambda_B"},
    {"blockage", "r_B"},
    {"blockage", "h_B"},
    {"antenna", "g_T_max", false, true},
    {"antenna", "g_T_min", false, true},
    {"antenna", "g_U_max", false, true},
    {"antenna", "g_U_min", false, true},
    {"antenna", "phi_T", false, false, true},
    {"antenna", "phi_U", false, false, true},
    {"antenna", "sigma_eps_T", false, false, true},
    {"antenna", "sigma_eps_U", false, false, true},
};

inline double* field(NetworkConfig& cfg, std::string_view name) {
  auto& g = cfg.geometry;
  auto& r = cfg.radio;
  auto& b = cfg.blockage;
  auto& a = cfg.antenna;
  const std::pair<std::string_view, double*> table[] = {
      {"r_d", &g.r_d}, {"h_A", &g.h_A}, {"h_U", &g.h_U}, {"v_0", &g.v_0}, {"delta_T", &g.delta_T},
      {"P_T", &r.P_T}, {"P_R", &r.P_R}, {"f_T", &r.f_T}, {"f_R", &r.f_R}, {"W_T", &r.W_T},
      {"W_R", &r.W_R}, {"k_a", &r.k_a}, {"alpha_R", &r.alpha_R}, {"alpha_L", &r.alpha_L},
      {"alpha_N", &r.alpha_N}, {"sigma2_T", &r.sigma2_T}, {"sigma2_R", &r.sigma2_R}, {"B_T", &r.B_T},
      {"theta", &r.theta}, {"lambda_B", &b.lambda_B}, {"r_B", &b.r_B}, {"h_B", &b.h_B},
      {"g_T_max", &a.g_T_max}, {"g_T_min", &a.g_T_min}, {"g_U_max", &a.g_U_max},
      {"g_U_min", &a.g_U_min}, {"phi_T", &a.phi_T}, {"phi_U", &a.phi_U},
      {"sigma_eps_T", &a.sigma_eps_T}, {"sigma_eps_U", &a.sigma_eps_U},
  };
  for (const auto& [n, p] : table) {
    if (n == name) return p;
  }
  return nullptr;
}

inline int parse_integer(double value, const std::string& key) {
  if (value != std::floor(value) || std::abs(value) > 1e9) {
    throw ConfigError(ConfigError::Kind::Malformed, key, "parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(value);
}

}  // namespace detail

// Parses a configuration document:
//
//   [geometry]
//   r_d = 80
//   [radio]
//   P_T_dbm = 5      # suffixes _dbm, _db, _deg select the unit
//
// Every canonical key must be present exactly once (in any of its unit
// spellings). Values are converted to SI linear units and validated.
inline NetworkConfig load_config(std::string_view text) {
  NetworkConfig cfg;
  std::map<std::string, bool, std::less<>> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(ConfigError::Kind::Malformed, "", "line " + std::to_string(line_no) + ": bad section header");
      }
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "geometry" && section != "radio" && section != "blockage" && section != "antenna") {
        throw ConfigError(ConfigError::Kind::UnknownKey, section, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(ConfigError::Kind::Malformed, "", "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value_text = detail::trim(line.substr(eq + 1));

    const detail::KeySpec* spec = nullptr;
    auto unit = detail::Unit::Plain;
    for (const auto& k : detail::kKeys) {
      if (key == k.name) {
        spec = &k;
      } else if (k.allow_dbm && key == std::string(k.name) + "_dbm") {
        spec = &k, unit = detail::Unit::Dbm;
      } else if (k.allow_db && key == std::string(k.name) + "_db") {
        spec = &k, unit = detail::Unit::Db;
      } else if (k.allow_deg && key == std::string(k.name) + "_deg") {
        spec = &k, unit = detail::Unit::Deg;
      }
      if (spec) break;
    }
    if (!spec) throw ConfigError(ConfigError::Kind::UnknownKey, key, "unknown key '" + key + "'");
    if (!section.empty() && section != spec->section) {
      throw ConfigError(ConfigError::Kind::UnknownKey, key,
                        "key '" + key + "' belongs to [" + std::string(spec->section) + "], found in [" + section + "]");
    }
    const std::string canonical(spec->name);
    if (seen.contains(canonical)) {
      throw ConfigError(ConfigError::Kind::Malformed, canonical, "key '" + canonical + "' given more than once");
    }
    seen[canonical] = true;

    double value = detail::parse_number(value_text, key);
    switch (unit) {
      case detail::Unit::Dbm: value = dbm_to_watt(value); break;
      case detail::Unit::Db: value = from_db(value); break;
      case detail::Unit::Deg: value = deg_to_rad(value); break;
      case detail::Unit::Plain: break;
    }

    if (canonical == "N_A") {
      cfg.geometry.N_A = detail::parse_integer(value, key);
    } else if (canonical == "m_L") {
      cfg.radio.m_L = detail::parse_integer(value, key);
    } else if (canonical == "m_N") {
      cfg.radio.m_N = detail::parse_integer(value, key);
    } else {
      *detail::field(cfg, canonical) = value;
    }
  }
  for (const auto& k : detail::kKeys) {
    if (!seen.contains(k.name)) {
      throw ConfigError(ConfigError::Kind::MissingKey, std::string(k.name), "missing key '" + std::string(k.name) + "'");
    }
  }
  validate(cfg);
  return cfg;
}

// Writes the config in canonical SI form. Round-trips exactly through
// load_config.
inline std::string serialize_config(const NetworkConfig& cfg) {
  auto copy = cfg;
  std::ostringstream out;
  std::string_view section;
  for (const auto& k : detail::kKeys) {
    if (k.section != section) {
      section = k.section;
      if (out.tellp() > 0) out << '\n';
      out << '[' << section << "]\n";
    }
    double value = 0.0;
    if (k.name == "N_A") {
      value = copy.geometry.N_A;
    } else if (k.name == "m_L") {
      value = copy.radio.m_L;
    } else if (k.name == "m_N") {
      value = copy.radio.m_N;
    } else {
      value = *detail::field(copy, k.name);
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    out << k.name << " = " << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
  }
  return out.str();
}

}  // namespace hexnet

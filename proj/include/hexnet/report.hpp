#pragma once

// Sweep rows, their CSV rendering, and analytic-versus-simulation comparison.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hexnet/analytic.hpp"
#include "hexnet/montecarlo.hpp"

namespace hexnet {

struct SweepRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  CoverageReport analytic;
  std::optional<McResult> mc;
};

// Locale-independent %.9g.
inline std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

inline const std::vector<std::string>& base_columns() {
  static const std::vector<std::string> cols{"sweep_param", "sweep_value", "A_L",    "A_N",   "A_R",
                                             "Pcov_L",      "Pcov_N",      "Pcov_R", "Pcov",  "tau_L",
                                             "tau_N",       "tau_R",       "tau"};
  return cols;
}

// Metric columns after sweep_param and sweep_value.
inline std::vector<double> metric_values(const CoverageReport& r) {
  return {r.assoc.los,         r.assoc.nlos,        r.assoc.rf,       r.cond_coverage.los,
          r.cond_coverage.nlos, r.cond_coverage.rf, r.total_coverage, r.cond_rate.los,
          r.cond_rate.nlos,     r.cond_rate.rf,     r.total_rate};
}

inline std::vector<double> mc_means(const McResult& m) {
  return {m.assoc.los,
          m.assoc.nlos,
          m.assoc.rf,
          m.cond_coverage.los.mean,
          m.cond_coverage.nlos.mean,
          m.cond_coverage.rf.mean,
          m.coverage.mean,
          m.cond_rate.los.mean,
          m.cond_rate.nlos.mean,
          m.cond_rate.rf.mean,
          m.rate.mean};
}

inline std::vector<double> mc_half_widths(const McResult& m) {
  auto bernoulli = [&](double p) { return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(m.n_trials)); };
  return {bernoulli(m.assoc.los),
          bernoulli(m.assoc.nlos),
          bernoulli(m.assoc.rf),
          m.cond_coverage.los.half_width_95,
          m.cond_coverage.nlos.half_width_95,
          m.cond_coverage.rf.half_width_95,
          m.coverage.half_width_95,
          m.cond_rate.los.half_width_95,
          m.cond_rate.nlos.half_width_95,
          m.cond_rate.rf.half_width_95,
          m.rate.half_width_95};
}

inline std::vector<std::string> csv_columns(bool with_mc) {
  auto cols = base_columns();
  if (!with_mc) return cols;
  const std::vector<std::string> metrics(cols.begin() + 2, cols.end());
  for (const auto& c : metrics) cols.push_back("mc_" + c);
  for (const auto& c : metrics) cols.push_back("mc_" + c + "_ci");
  return cols;
}

inline std::string csv_header(bool with_mc) {
  std::string line;
  for (const auto& c : csv_columns(with_mc)) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

inline std::string csv_line(const SweepRow& row) {
  std::string line = row.sweep_param + ',' + format_value(row.sweep_value);
  auto append = [&](const std::vector<double>& values) {
    for (double v : values) line += ',' + format_value(v);
  };
  append(metric_values(row.analytic));
  if (row.mc) {
    append(mc_means(*row.mc));
    append(mc_half_widths(*row.mc));
  }
  return line + '\n';
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  const bool with_mc = !rows.empty() && rows.front().mc.has_value();
  std::string out = csv_header(with_mc);
  for (const auto& r : rows) out += csv_line(r);
  return out;
}

// One analytic-versus-simulation check; passes iff
// |analytic - mc| <= half_width + slack.
struct MetricCheck {
  std::string name;
  double analytic = 0.0;
  double mc = 0.0;
  double half_width = 0.0;
  double slack = 0.0;
  bool pass = false;
};

inline constexpr double kProbabilitySlack = 0.005;
inline constexpr double kRateRelativeSlack = 0.01;

inline MetricCheck check_metric(std::string name, double analytic, const McEstimate& mc, double slack) {
  MetricCheck c{std::move(name), analytic, mc.mean, mc.half_width_95, slack, false};
  c.pass = std::abs(c.analytic - c.mc) <= c.half_width + c.slack;
  return c;
}

// Compares THz association, coverage and rate of an analytic report against
// a simulation result.
inline std::vector<MetricCheck> compare(const CoverageReport& analytic, const McResult& mc) {
  return {
      check_metric("A_T", analytic.assoc.los + analytic.assoc.nlos, mc.assoc_thz, kProbabilitySlack),
      check_metric("Pcov", analytic.total_coverage, mc.coverage, kProbabilitySlack),
      check_metric("tau", analytic.total_rate, mc.rate, kRateRelativeSlack * std::abs(analytic.total_rate)),
  };
}

// Runs both engines; the configs may differ so that a deliberately corrupted
// engine input can be shown to fail.
inline std::vector<MetricCheck> compare(const NetworkConfig& analytic_cfg, const NetworkConfig& mc_cfg, long n_trials,
                                        std::uint64_t seed, int threads = 1) {
  return compare(AnalyticModel(analytic_cfg).full_report(), estimate(mc_cfg, n_trials, seed, threads));
}

}  // namespace hexnet

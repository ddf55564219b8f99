// hexnet: analytic, simulated and cross-checked coverage/rate sweeps.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hexnet/hexnet.hpp"

namespace {

using namespace hexnet;

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericalError = 3 };

struct Options {
  std::string config_path;
  std::string sweep;
  std::string preset;
  std::string out;
  long trials = 200000;
  std::uint64_t seed = 1;
  int jobs = 0;
  bool json = false;
};

struct Point {
  std::string label;
  double value;
  NetworkConfig cfg;
};

NetworkConfig load_base(const Options& opt) {
  if (opt.config_path.empty()) return table3_config();
  std::ifstream in(opt.config_path);
  if (!in) throw ConfigError(ConfigError::Kind::Malformed, "", "cannot open config '" + opt.config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::vector<Point> sweep_points(const Options& opt) {
  const NetworkConfig base = load_base(opt);
  if (!opt.sweep.empty() && !opt.preset.empty()) {
    throw SweepError(SweepError::Kind::Malformed, "--sweep and --preset are mutually exclusive");
  }
  std::vector<SweepSpec> specs;
  if (!opt.preset.empty()) {
    specs = preset(opt.preset, base);
  } else if (!opt.sweep.empty()) {
    specs.push_back(parse_sweep(opt.sweep, base));
  }
  std::vector<Point> points;
  if (specs.empty()) {
    points.push_back({"none", std::numeric_limits<double>::quiet_NaN(), base});
    return points;
  }
  for (const auto& s : specs) {
    for (double v : s.values) points.push_back({s.label, v, apply_sweep_value(s.base, s.parameter, v)});
  }
  return points;
}

// Evaluates every point on a pool of `jobs` workers; results keep sweep order.
template <class F>
auto run_pool(const std::vector<Point>& points, int jobs, F&& work) {
  using R = decltype(work(points.front()));
  std::vector<R> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = work(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

nlohmann::json json_number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string to_json(const std::vector<SweepRow>& rows) {
  const bool with_mc = !rows.empty() && rows.front().mc.has_value();
  const auto cols = csv_columns(with_mc);
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::vector<double> values = metric_values(r.analytic);
    if (r.mc) {
      const auto means = mc_means(*r.mc);
      const auto hws = mc_half_widths(*r.mc);
      values.insert(values.end(), means.begin(), means.end());
      values.insert(values.end(), hws.begin(), hws.end());
    }
    nlohmann::ordered_json rec;
    rec["sweep_param"] = r.sweep_param;
    rec["sweep_value"] = json_number(r.sweep_value);
    for (std::size_t c = 0; c < values.size(); ++c) rec[cols[c + 2]] = json_number(values[c]);
    if (r.mc) rec["mc_trials"] = r.mc->n_trials;
    out += "  " + rec.dump() + (i + 1 < rows.size() ? ",\n" : "\n");
  }
  return out + "]\n";
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw ConfigError(ConfigError::Kind::Malformed, "", "cannot write '" + opt.out + "'");
  f << text;
}

void check_trials(const Options& opt) {
  if (opt.trials < kMinTrials) {
    throw SweepError(SweepError::Kind::BelowMinTrials, "--trials " + std::to_string(opt.trials) +
                                                      " is below the minimum of " + std::to_string(kMinTrials));
  }
}

std::vector<SweepRow> evaluate(const Options& opt, bool with_mc) {
  const auto points = sweep_points(opt);
  return run_pool(points, opt.jobs, [&](const Point& p) {
    SweepRow row;
    row.sweep_param = p.label;
    row.sweep_value = p.value;
    row.analytic = AnalyticModel(p.cfg).full_report();
    if (with_mc) row.mc = estimate(p.cfg, opt.trials, opt.seed);
    return row;
  });
}

int cmd_analytic(const Options& opt) {
  const auto rows = evaluate(opt, false);
  emit(opt, opt.json ? to_json(rows) : to_csv(rows));
  return kOk;
}

int cmd_simulate(const Options& opt) {
  check_trials(opt);
  const auto rows = evaluate(opt, true);
  emit(opt, opt.json ? to_json(rows) : to_csv(rows));
  return kOk;
}

int cmd_validate(const Options& opt) {
  check_trials(opt);
  const auto rows = evaluate(opt, true);
  bool all_pass = true;
  bool reported = false;
  for (const auto& row : rows) {
    for (const auto& c : compare(row.analytic, *row.mc)) {
      std::printf("%s %s=%s %s analytic=%s mc=%s half_width=%s slack=%s\n", c.pass ? "PASS" : "FAIL",
                  row.sweep_param.c_str(), format_value(row.sweep_value).c_str(), c.name.c_str(),
                  format_value(c.analytic).c_str(), format_value(c.mc).c_str(), format_value(c.half_width).c_str(),
                  format_value(c.slack).c_str());
      if (!c.pass && !reported) {
        std::fprintf(stderr,
                     "validation failed at %s=%s: %s differs by %s (allowed %s = half-width %s + slack %s)\n",
                     row.sweep_param.c_str(), format_value(row.sweep_value).c_str(), c.name.c_str(),
                     format_value(std::abs(c.analytic - c.mc)).c_str(), format_value(c.half_width + c.slack).c_str(),
                     format_value(c.half_width).c_str(), format_value(c.slack).c_str());
        reported = true;
      }
      all_pass = all_pass && c.pass;
    }
  }
  if (!opt.out.empty()) emit(opt, opt.json ? to_json(rows) : to_csv(rows));
  std::printf("%s\n", all_pass ? "ALL PASS" : "VALIDATION FAILED");
  return all_pass ? kOk : kValidationFailed;
}

const char* sweep_error_name(SweepError::Kind k) {
  switch (k) {
    case SweepError::Kind::EmptySweep: return "EmptySweep";
    case SweepError::Kind::UnknownParameter: return "UnknownParameter";
    case SweepError::Kind::Malformed: return "Malformed";
    case SweepError::Kind::BelowMinTrials: return "BelowMinTrials";
  }
  return "SweepError";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage and rate of a finite indoor RF/THz network"};
  app.require_subcommand(1);
  Options opt;
  opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto add_common = [&](CLI::App* cmd, bool mc) {
    cmd->add_option("--config", opt.config_path, "scenario file (default: built-in reference scenario)");
    cmd->add_option("--sweep", opt.sweep, "param=values; values a,b,c | lin:start:stop:n | log:start:stop:n");
    cmd->add_option("--preset", opt.preset, "named sweep: fig4 .. fig9");
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
    cmd->add_option("--jobs", opt.jobs, "worker threads for sweep points")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", opt.json, "emit JSON records instead of CSV");
    if (mc) {
      cmd->add_option("--trials", opt.trials, "Monte-Carlo trials per point");
      cmd->add_option("--seed", opt.seed, "Monte-Carlo seed");
    }
  };
  auto* analytic = app.add_subcommand("analytic", "analytic metrics per sweep point");
  auto* simulate = app.add_subcommand("simulate", "analytic and Monte-Carlo metrics per sweep point");
  auto* validate_cmd = app.add_subcommand("validate", "check analytic metrics against Monte-Carlo");
  add_common(analytic, false);
  add_common(simulate, true);
  add_common(validate_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (analytic->parsed()) return cmd_analytic(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    return cmd_validate(opt);
  } catch (const SweepError& e) {
    std::fprintf(stderr, "error: %s: %s\n", sweep_error_name(e.kind()), e.what());
    return kConfigError;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
}

#pragma once

// Monte-Carlo simulator of the reference UE. Every trial draws a fresh
// deployment, associates by maximum biased average power, then draws gains
// and fading to form the instantaneous SINR.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "hexnet/analytic.hpp"
#include "hexnet/antenna.hpp"
#include "hexnet/errors.hpp"
#include "hexnet/geometry.hpp"
#include "hexnet/params.hpp"
#include "hexnet/propagation.hpp"
#include "hexnet/random.hpp"

namespace hexnet {

inline constexpr long kMinTrials = 1000;
inline constexpr int kSubstreams = 64;

struct TrialOutcome {
  Tier assoc_event;
  double sinr;
  bool covered;
  double rate_sample;       // bits/s
  double serving_distance;  // m
  double signal;            // received power of the serving link [W]
  double interference;      // summed same-band interference [W]
};

struct TrialOptions {
  // Replace every fading draw by its mean. For deterministic tests only.
  bool pin_fading = false;
};

struct McEstimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double half_width_95 = std::numeric_limits<double>::quiet_NaN();
  long n_trials = 0;
};

// Running mean and squared deviations (Welford), mergeable in a fixed order.
class Accumulator {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / n_;
    m2_ += d * (x - mean_);
  }

  void merge(const Accumulator& o) {
    if (o.n_ == 0) return;
    const long n = n_ + o.n_;
    const double d = o.mean_ - mean_;
    mean_ += d * o.n_ / n;
    m2_ += o.m2_ + d * d * static_cast<double>(n_) * o.n_ / n;
    n_ = n;
  }

  long count() const { return n_; }

  McEstimate estimate() const {
    McEstimate e;
    e.n_trials = n_;
    if (n_ == 0) return e;
    e.mean = mean_;
    e.half_width_95 = n_ > 1 ? 1.96 * std::sqrt(m2_ / (n_ - 1)) / std::sqrt(static_cast<double>(n_)) : 0.0;
    return e;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

class Simulator {
 public:
  explicit Simulator(const NetworkConfig& cfg, TrialOptions options = {}) : cfg_(validate(cfg)), options_(options) {
    const auto& r = cfg_.radio;
    desired_ = desired_gain_pmf(cfg_.antenna);
    interferer_ = interferer_gain_pmf(cfg_.antenna);
    thz_bias_ = r.B_T * r.P_T * desired_.mean();
  }

  const NetworkConfig& config() const { return cfg_; }

  TrialOutcome run(RngStream& rng) const {
    const auto& r = cfg_.radio;
    const auto points = sample_deployment(cfg_, rng);

    // Association on biased average power; ties keep the first AP.
    std::size_t serving = 0;
    double best = -1.0;
    std::vector<double> distance(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      distance[i] = distance_to_ue(points[i], cfg_);
      const auto link = points[i].link_class();
      const double power = link == LinkClass::RF ? r.P_R * path_gain(link, distance[i], r)
                                                  : thz_bias_ * path_gain(link, distance[i], r);
      if (power > best) {
        best = power;
        serving = i;
      }
    }

    const auto& server = points[serving];
    const auto serving_link = server.link_class();
    TrialOutcome out{};
    out.serving_distance = distance[serving];
    out.assoc_event = serving_link == LinkClass::RF       ? Tier::Rf
                      : serving_link == LinkClass::ThzLos ? Tier::Los
                                                          : Tier::Nlos;

    const bool rf = serving_link == LinkClass::RF;
    const double power = rf ? r.P_R : r.P_T;
    const double desired_gain = rf ? 1.0 : sample_gain(desired_, rng);
    const double signal = power * path_gain(serving_link, distance[serving], r) * desired_gain * fading(serving_link, rng);

    double interference = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == serving || (points[i].kind == ApKind::RF) != rf) continue;
      const auto link = points[i].link_class();
      const double gain = rf ? 1.0 : sample_gain(interferer_, rng);
      interference += power * path_gain(link, distance[i], r) * gain * fading(link, rng);
    }

    const double noise = rf ? r.sigma2_R : r.sigma2_T;
    const double bandwidth = rf ? r.W_R : r.W_T;
    out.signal = signal;
    out.interference = interference;
    out.sinr = signal / (interference + noise);
    out.covered = out.sinr >= r.theta;
    out.rate_sample = bandwidth * std::log2(1.0 + out.sinr);
    return out;
  }

 private:
  double fading(LinkClass link, RngStream& rng) const {
    return options_.pin_fading ? 1.0 : sample_fading(link, cfg_.radio, rng);
  }

  NetworkConfig cfg_;
  TrialOptions options_;
  double thz_bias_ = 0.0;
  GainPmf desired_{};
  GainPmf interferer_{};
};

inline TrialOutcome run_trial(const NetworkConfig& cfg, RngStream& rng, const TrialOptions& options = {}) {
  return Simulator(cfg, options).run(rng);
}

struct McResult {
  long n_trials = 0;
  TierMetrics<long> assoc_counts;
  TierMetrics<double> assoc;  // frequencies
  McEstimate assoc_thz;       // A_L + A_N as a Bernoulli mean
  McEstimate coverage;
  McEstimate rate;
  TierMetrics<McEstimate> cond_coverage;
  TierMetrics<McEstimate> cond_rate;
};

namespace detail {

struct StreamTotals {
  Accumulator thz;
  Accumulator coverage;
  Accumulator rate;
  TierMetrics<Accumulator> cond_coverage;
  TierMetrics<Accumulator> cond_rate;

  void merge(const StreamTotals& o) {
    thz.merge(o.thz);
    coverage.merge(o.coverage);
    rate.merge(o.rate);
    for (Tier t : kTiers) {
      cond_coverage[t].merge(o.cond_coverage[t]);
      cond_rate[t].merge(o.cond_rate[t]);
    }
  }
};

}  // namespace detail

// Splits the trials over kSubstreams fixed sub-streams and merges them in
// stream order, so the result depends on (cfg, n_trials, seed) only.
inline McResult estimate(const NetworkConfig& cfg, long n_trials, std::uint64_t seed, int threads = 1,
                         const TrialOptions& options = {}) {
  if (n_trials < kMinTrials) {
    throw DomainError("estimate: n_trials = " + std::to_string(n_trials) + " is below the minimum of " +
                      std::to_string(kMinTrials));
  }
  const Simulator sim(cfg, options);
  std::vector<detail::StreamTotals> totals(kSubstreams);

  auto run_stream = [&](int s) {
    RngStream rng = make_substream(seed, static_cast<std::uint64_t>(s));
    const long count = n_trials / kSubstreams + (s < n_trials % kSubstreams ? 1 : 0);
    auto& acc = totals[s];
    for (long i = 0; i < count; ++i) {
      const auto o = sim.run(rng);
      const double covered = o.covered ? 1.0 : 0.0;
      acc.thz.add(o.assoc_event == Tier::Rf ? 0.0 : 1.0);
      acc.coverage.add(covered);
      acc.rate.add(o.rate_sample);
      acc.cond_coverage[o.assoc_event].add(covered);
      acc.cond_rate[o.assoc_event].add(o.rate_sample);
    }
  };

  threads = std::clamp(threads, 1, kSubstreams);
  if (threads == 1) {
    for (int s = 0; s < kSubstreams; ++s) run_stream(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int s = next++; s < kSubstreams; s = next++) run_stream(s);
      });
    }
  }

  detail::StreamTotals all;
  for (const auto& t : totals) all.merge(t);

  McResult res;
  res.n_trials = n_trials;
  for (Tier t : kTiers) {
    res.assoc_counts[t] = all.cond_coverage[t].count();
    res.assoc[t] = static_cast<double>(res.assoc_counts[t]) / n_trials;
    res.cond_coverage[t] = all.cond_coverage[t].estimate();
    res.cond_rate[t] = all.cond_rate[t].estimate();
  }
  res.assoc_thz = all.thz.estimate();
  res.coverage = all.coverage.estimate();
  res.rate = all.rate.estimate();
  return res;
}

}  // namespace hexnet

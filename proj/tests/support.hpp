#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "hexnet/hexnet.hpp"

namespace hexnet::support {

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

// Pearson test of observed counts against expected counts; neighbouring bins
// are pooled until each expected count reaches 5.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  std::vector<double> obs;
  std::vector<double> exp;
  double o = 0.0;
  double e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o += observed[i];
    e += expected[i];
    if (e >= 5.0) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp.empty()) {
      obs.push_back(o);
      exp.push_back(e);
    } else {
      obs.back() += o;
      exp.back() += e;
    }
  }
  ChiSquare r;
  for (std::size_t i = 0; i < obs.size(); ++i) r.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  r.dof = static_cast<int>(obs.size()) - 1;
  r.p_value = boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

// Bin edges splitting [a, b] into `bins` cells of equal probability under
// the cumulative distribution `cdf` (bisection).
inline std::vector<double> equal_probability_edges(const std::function<double(double)>& cdf, double a, double b,
                                                   int bins) {
  std::vector<double> edges{a};
  const double total = cdf(b);
  for (int i = 1; i < bins; ++i) {
    const double target = total * i / bins;
    double lo = edges.back();
    double hi = b;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < target ? lo : hi) = mid;
    }
    edges.push_back(0.5 * (lo + hi));
  }
  edges.push_back(b);
  return edges;
}

inline std::vector<double> histogram(const std::vector<double>& samples, const std::vector<double>& edges) {
  std::vector<double> counts(edges.size() - 1, 0.0);
  for (double x : samples) {
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t idx = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin() - 1);
    counts[std::min(idx, counts.size() - 1)] += 1.0;
  }
  return counts;
}

// Random but physically sensible scenario: every continuous parameter scaled
// by a factor in [1 - spread, 1 + spread], N_A from {10, 20, 30} and the THz
// count rounded to an integer.
inline NetworkConfig perturbed_config(std::mt19937_64& rng, double spread = 0.2) {
  std::uniform_real_distribution<double> u(1.0 - spread, 1.0 + spread);
  std::uniform_int_distribution<int> pick(0, 2);
  for (;;) {
    NetworkConfig c = table3_config();
    auto& g = c.geometry;
    auto& r = c.radio;
    auto& b = c.blockage;
    auto& a = c.antenna;
    g.r_d *= u(rng);
    g.h_A *= u(rng);
    g.h_U *= u(rng);
    g.v_0 = std::uniform_real_distribution<double>(0.0, spread)(rng) * g.r_d;
    g.N_A = 10 * (1 + pick(rng));
    g.delta_T = std::round(0.8 * u(rng) * g.N_A) / g.N_A;
    g.delta_T = std::min(g.delta_T, 1.0);
    r.P_T *= u(rng);
    r.P_R *= u(rng);
    r.f_T *= u(rng);
    r.f_R *= u(rng);
    r.W_T *= u(rng);
    r.W_R *= u(rng);
    r.k_a *= u(rng);
    r.alpha_R *= u(rng);
    r.alpha_L = std::max(2.0, r.alpha_L * u(rng));
    r.alpha_N *= u(rng);
    r.sigma2_T *= u(rng);
    r.sigma2_R *= u(rng);
    r.B_T *= u(rng);
    r.theta *= u(rng);
    b.lambda_B *= u(rng);
    b.r_B *= u(rng);
    b.h_B *= u(rng);
    a.g_T_max *= u(rng);
    a.g_T_min *= u(rng);
    a.g_U_max *= u(rng);
    a.g_U_min *= u(rng);
    a.phi_T *= u(rng);
    a.phi_U *= u(rng);
    try {
      return validate(c);
    } catch (const ConfigError&) {
    }
  }
}

// Wider random scenario for structural properties: any AP mix, random
// fading shapes, steering errors and UE offsets.
inline NetworkConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    NetworkConfig c = perturbed_config(rng, 0.3);
    auto& g = c.geometry;
    g.N_A = 1 + static_cast<int>(u(rng) * 30);
    g.delta_T = std::round(u(rng) * g.N_A) / g.N_A;
    g.v_0 = u(rng) * g.r_d;
    c.radio.m_L = 1 + static_cast<int>(u(rng) * 4);
    c.radio.m_N = 1 + static_cast<int>(u(rng) * 2);
    c.radio.B_T = std::pow(10.0, -2.0 + 4.0 * u(rng));
    c.antenna.sigma_eps_T = deg_to_rad(30.0 * u(rng));
    c.antenna.sigma_eps_U = deg_to_rad(30.0 * u(rng));
    try {
      return validate(c);
    } catch (const ConfigError&) {
    }
  }
}

// Biased average power of one AP of the given tier at distance d, written
// out from the radio parameters.
inline double biased_power(const NetworkConfig& c, Tier t, double d) {
  const auto& r = c.radio;
  const double thz = r.B_T * r.P_T * free_space_gain(r.f_T) * mean_desired_gain(c.antenna) * std::exp(-r.k_a * d);
  switch (t) {
    case Tier::Los: return thz * std::pow(d, -r.alpha_L);
    case Tier::Nlos: return thz * std::pow(d, -r.alpha_N);
    case Tier::Rf: return r.P_R * free_space_gain(r.f_R) * std::pow(d, -r.alpha_R);
  }
  return 0.0;
}

// Distance at which a tier-`other` AP matches the power of a tier-`server`
// AP at r, by log-space bisection.
inline double balance_oracle(const NetworkConfig& c, Tier server, Tier other, double r) {
  const double target = std::log(biased_power(c, server, r));
  double lo = 1e-6, hi = 1e7;
  for (int i = 0; i < 300; ++i) {
    const double mid = std::sqrt(lo * hi);
    (std::log(biased_power(c, other, mid)) > target ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

// Fourth-order central difference of the u-th derivative (u = 1..4) of f at s.
inline double central_difference(const std::function<double(double)>& f, double s, double h, int u) {
  auto F = [&](int k) { return f(s + k * h); };
  switch (u) {
    case 1: return (-F(2) + 8 * F(1) - 8 * F(-1) + F(-2)) / (12 * h);
    case 2: return (-F(2) + 16 * F(1) - 30 * F(0) + 16 * F(-1) - F(-2)) / (12 * h * h);
    case 3: return (-F(3) + 8 * F(2) - 13 * F(1) + 13 * F(-1) - 8 * F(-2) + F(-3)) / (8 * h * h * h);
    case 4: return (-F(3) + 12 * F(2) - 39 * F(1) + 56 * F(0) - 39 * F(-1) + 12 * F(-2) - F(-3)) / (6 * h * h * h * h);
  }
  return std::nan("");
}

// Largest relative gap between the jet derivatives of L_I in s and central
// differences of the scalar transform, over u = 1..order.
inline double laplace_derivative_gap(const AnalyticModel& m, Tier t, double s, double x, int order) {
  const Jet jet = m.laplace_jet(t, s, x, order);
  auto scalar = [&](double v) { return m.laplace(t, v, x); };
  double worst = 0.0;
  for (int u = 1; u <= order; ++u) {
    const double h = s * (u == 1 ? 1e-3 : u == 2 ? 3e-3 : 1e-2);
    const double fd = central_difference(scalar, s, h, u);
    worst = std::max(worst, std::abs(jet.derivative(u) - fd) / std::abs(fd));
  }
  return worst;
}

// A Laplace argument at which the transform of event t is far from both 0
// and 1: the serving-link normalisation scaled by a random threshold.
inline double typical_laplace_argument(const NetworkConfig& c, Tier t, double x, double threshold) {
  const auto& r = c.radio;
  if (t == Tier::Rf) return threshold * std::pow(x, r.alpha_R) / (r.P_R * free_space_gain(r.f_R));
  const double alpha = t == Tier::Los ? r.alpha_L : r.alpha_N;
  const int m = t == Tier::Los ? r.m_L : r.m_N;
  return m * threshold * std::exp(r.k_a * x) * std::pow(x, alpha) /
         (r.P_T * free_space_gain(r.f_T) * c.antenna.g_T_max * c.antenna.g_U_max);
}

// Laplace argument at which L_I(s) equals `level` (bisection in log s). Finite
// differences only resolve the transform where it is well away from 1.
inline double laplace_argument_at(const AnalyticModel& m, Tier t, double x, double level) {
  double lo = std::log(typical_laplace_argument(m.config(), t, x, 1.0)) - 30.0;
  double hi = lo + 80.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (m.laplace(t, std::exp(mid), x) > level ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

// A serving distance of event t drawn from its own density (inverse CDF on
// a grid of the association integrand).
inline double draw_serving_distance(const AnalyticModel& m, Tier t, std::mt19937_64& rng) {
  const auto& sup = m.support();
  const int n = 400;
  std::vector<double> xs(n + 1), cdf(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) xs[i] = sup.z_l + (sup.z_p - sup.z_l) * i / n;
  for (int i = 1; i <= n; ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (m.association_density(t, xs[i - 1]) + m.association_density(t, xs[i])) * (xs[i] - xs[i - 1]);
  }
  const double target = std::uniform_real_distribution<double>(0.02, 0.98)(rng) * cdf[n];
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
  return xs[std::max<std::ptrdiff_t>(1, it - cdf.begin())];
}

}  // namespace hexnet::support

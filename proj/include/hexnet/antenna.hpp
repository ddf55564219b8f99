#pragma once

// Sectored antennas with Gaussian beam-steering errors. A THz link gain is the
// product of an AP lobe and a UE lobe, giving four possible atoms.

#include <array>
#include <cmath>
#include <numbers>

#include "hexnet/params.hpp"
#include "hexnet/random.hpp"

namespace hexnet {

struct GainAtom {
  double gain;
  double probability;
};

// Atoms ordered (T max, U max), (T max, U min), (T min, U max), (T min, U min).
struct GainPmf {
  std::array<GainAtom, 4> atoms;

  double mean() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.gain * a.probability;
    return m;
  }
  double total_probability() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.probability;
    return s;
  }
};

// CDF of |eps| for eps ~ N(0, sigma^2). sigma = 0 is a point mass at zero.
inline double half_normal_cdf(double x, double sigma) {
  if (sigma == 0.0) return 1.0;
  return std::erf(x / (std::numbers::sqrt2 * sigma));
}

inline std::array<double, 4> lobe_gains(const AntennaParams& ant) {
  return {ant.g_T_max * ant.g_U_max, ant.g_T_max * ant.g_U_min, ant.g_T_min * ant.g_U_max,
          ant.g_T_min * ant.g_U_min};
}

inline GainPmf product_pmf(const AntennaParams& ant, double p_t, double p_u) {
  const auto g = lobe_gains(ant);
  return GainPmf{{{
      {g[0], p_t * p_u},
      {g[1], p_t * (1.0 - p_u)},
      {g[2], (1.0 - p_t) * p_u},
      {g[3], (1.0 - p_t) * (1.0 - p_u)},
  }}};
}

// Serving link: each side lands its main lobe when the steering error stays
// within half the beamwidth.
inline GainPmf desired_gain_pmf(const AntennaParams& ant) {
  return product_pmf(ant, half_normal_cdf(ant.phi_T / 2.0, ant.sigma_eps_T),
                     half_normal_cdf(ant.phi_U / 2.0, ant.sigma_eps_U));
}

// Interfering link: boresight directions are uniform, so each main lobe is hit
// with probability phi / (2 pi).
inline GainPmf interferer_gain_pmf(const AntennaParams& ant) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return product_pmf(ant, ant.phi_T / two_pi, ant.phi_U / two_pi);
}

inline double mean_desired_gain(const AntennaParams& ant) { return desired_gain_pmf(ant).mean(); }

inline double sample_gain(const GainPmf& pmf, RngStream& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < pmf.atoms.size(); ++k) {
    cumulative += pmf.atoms[k].probability;
    if (u < cumulative) return pmf.atoms[k].gain;
  }
  return pmf.atoms.back().gain;
}

}  // namespace hexnet

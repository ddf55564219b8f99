#pragma once

#include <cmath>

#include "hexnet/errors.hpp"
#include "hexnet/params.hpp"
#include "hexnet/random.hpp"

namespace hexnet {

// Link class of an AP-UE link: selects path-loss exponent and fading shape.
enum class LinkClass { RF, ThzLos, ThzNlos };

// Probability that a THz link of 3-D length r is unblocked.
inline double kappa_los(double r, double beta, double delta_h) {
  if (r < delta_h - 1e-9) {
    throw DomainError("kappa_los: distance " + std::to_string(r) + " below AP-UE height difference");
  }
  const double horizontal2 = r * r - delta_h * delta_h;
  return std::exp(-beta * std::sqrt(horizontal2 > 0.0 ? horizontal2 : 0.0));
}

inline double kappa_nlos(double r, double beta, double delta_h) { return 1.0 - kappa_los(r, beta, delta_h); }

inline double path_loss_exponent(LinkClass link, const RadioParams& radio) {
  switch (link) {
    case LinkClass::RF: return radio.alpha_R;
    case LinkClass::ThzLos: return radio.alpha_L;
    case LinkClass::ThzNlos: return radio.alpha_N;
  }
  return radio.alpha_R;
}

// Nakagami shape; RF links are Rayleigh, i.e. exponential power (m = 1).
inline int fading_shape(LinkClass link, const RadioParams& radio) {
  switch (link) {
    case LinkClass::RF: return 1;
    case LinkClass::ThzLos: return radio.m_L;
    case LinkClass::ThzNlos: return radio.m_N;
  }
  return 1;
}

// Large-scale gain: gamma_R z^-alpha_R for RF, gamma_T e^{-k_a z} z^-alpha for THz.
inline double path_gain(LinkClass link, double z, const RadioParams& radio) {
  const double alpha = path_loss_exponent(link, radio);
  if (link == LinkClass::RF) return free_space_gain(radio.f_R) * std::pow(z, -alpha);
  return free_space_gain(radio.f_T) * std::exp(-radio.k_a * z) * std::pow(z, -alpha);
}

// CCDF of a unit-mean gamma(m, 1/m) power gain.
inline double gamma_unit_mean_ccdf(int m, double x) {
  if (x <= 0.0) return 1.0;
  const double mx = m * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= mx / k;
    sum += term;
  }
  return sum * std::exp(-mx);
}

inline double fading_ccdf(LinkClass link, double x, const RadioParams& radio) {
  return gamma_unit_mean_ccdf(fading_shape(link, radio), x);
}

inline double sample_fading(LinkClass link, const RadioParams& radio, RngStream& rng) {
  const int m = fading_shape(link, radio);
  return gamma_variate(rng, m, 1.0 / m);
}

}  // namespace hexnet

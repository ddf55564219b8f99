#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "hexnet/errors.hpp"

namespace hexnet {

// Principal branch W0 of the inverse of w e^w, for x >= -1/e.
//
// Initial guess: branch-point series near -1/e, two-term Taylor series near
// zero, asymptotic log expansion for large x; then Halley iterations until
// the step falls below 1e-15 relative.
inline double lambert_w0(double x) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (x < -inv_e - 1e-12) throw DomainError("lambert_w0: argument " + std::to_string(x) + " below -1/e");
  if (x <= -inv_e) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  } else if (std::abs(x) < 0.25) {
    w = x * (1.0 - x);
  } else if (x < 3.0) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

// W0(e^log_x) without forming e^log_x; Newton on w + ln w = log_x. Useful
// when the argument overflows a double.
inline double lambert_w0_of_exp(double log_x) {
  if (log_x < 700.0) return lambert_w0(std::exp(log_x));
  double w = log_x - std::log(log_x);
  for (int iter = 0; iter < 64; ++iter) {
    const double f = w + std::log(w) - log_x;
    const double step = f / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 1e-15 * w) break;
  }
  return w;
}

}  // namespace hexnet

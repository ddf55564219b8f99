#pragma once

// Platform-stable random variates. std::mt19937_64 has a standardized output
// sequence, but the std::*_distribution adaptors do not, so every variate
// used by the simulator is derived here from raw 64-bit draws.

#include <cmath>
#include <cstdint>
#include <random>

namespace hexnet {

using RngStream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for (seed, index); used to give every Monte-Carlo
// sub-stream its own engine.
inline RngStream make_substream(std::uint64_t seed, std::uint64_t index) {
  return RngStream(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(RngStream& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform on (0, 1); safe as a logarithm argument.
inline double uniform_open(RngStream& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

// Uniform integer in [0, n), unbiased by rejection.
inline std::uint64_t uniform_index(RngStream& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

// Standard normal via the Marsaglia polar method. One of the two generated
// normals is discarded so the stream consumption per call is self-contained.
inline double standard_normal(RngStream& rng) {
  double u, v, s;
  do {
    u = 2.0 * uniform01(rng) - 1.0;
    v = 2.0 * uniform01(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

// Gamma(shape, scale) for shape >= 1 via Marsaglia and Tsang (2000):
// d = shape - 1/3, c = 1/sqrt(9d); draw x ~ N(0,1), v = (1 + c x)^3 until
// v > 0 and either u < 1 - 0.0331 x^4 or log u < x^2/2 + d (1 - v + log v).
// Shapes below 1 use gamma(shape + 1) * u^(1/shape).
inline double gamma_variate(RngStream& rng, double shape, double scale) {
  if (shape < 1.0) {
    const double boosted = gamma_variate(rng, shape + 1.0, 1.0);
    return scale * boosted * std::pow(uniform_open(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

}  // namespace hexnet

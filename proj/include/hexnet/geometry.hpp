#pragma once

// Distance law between the reference UE and a uniformly placed ceiling AP,
// and sampling of whole AP deployments for the simulator.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "hexnet/errors.hpp"
#include "hexnet/params.hpp"
#include "hexnet/propagation.hpp"
#include "hexnet/random.hpp"

namespace hexnet {

// Support [z_l, z_p] of the AP-UE distance; the density changes form at z_m.
struct DistanceSupport {
  double z_l;
  double z_m;
  double z_p;
};

inline DistanceSupport distance_support(const GeometryParams& g) {
  const double z_l = g.h_A - g.h_U;
  return DistanceSupport{
      .z_l = z_l,
      .z_m = std::hypot(g.r_d - g.v_0, z_l),
      .z_p = std::hypot(g.r_d + g.v_0, z_l),
  };
}

// Density of the 3-D distance from the UE at horizontal offset v_0 to a point
// uniform on the ceiling disk of radius r_d. Zero outside [z_l, z_p].
inline double distance_pdf(double z, const DistanceSupport& sup, double v_0, double r_d) {
  if (z < sup.z_l || z > sup.z_p) return 0.0;
  const double r_d2 = r_d * r_d;
  if (z <= sup.z_m || v_0 == 0.0) return 2.0 * z / r_d2;
  const double horizontal = std::sqrt(z * z - sup.z_l * sup.z_l);
  double arg = (z * z + v_0 * v_0 - r_d2 - sup.z_l * sup.z_l) / (2.0 * v_0 * horizontal);
  if (arg < -1.0 - 1e-9 || arg > 1.0 + 1e-9) {
    throw DomainError("distance_pdf: arccos argument " + std::to_string(arg) + " outside [-1, 1]");
  }
  arg = std::clamp(arg, -1.0, 1.0);
  return 2.0 * z / (std::numbers::pi * r_d2) * std::acos(arg);
}

inline double distance_pdf(double z, const GeometryParams& g) {
  return distance_pdf(z, distance_support(g), g.v_0, g.r_d);
}

enum class ApKind { RF, THZ };
enum class LinkState { LOS, NLOS, NotApplicable };

struct ApPoint {
  double x;
  double y;
  ApKind kind;
  LinkState link;

  LinkClass link_class() const {
    if (kind == ApKind::RF) return LinkClass::RF;
    return link == LinkState::LOS ? LinkClass::ThzLos : LinkClass::ThzNlos;
  }
};

inline double distance_to_ue(double x, double y, const GeometryParams& g) {
  const double dx = x - g.v_0;
  const double dh = g.h_A - g.h_U;
  return std::sqrt(dx * dx + y * y + dh * dh);
}

inline double distance_to_ue(const ApPoint& p, const NetworkConfig& cfg) {
  return distance_to_ue(p.x, p.y, cfg.geometry);
}

// Draws N_A positions uniform on the disk, marks a uniformly random subset of
// n_T of them THz (partial Fisher-Yates on the indices), and draws each THz
// link state from the LOS probability at its own distance.
inline std::vector<ApPoint> sample_deployment(const NetworkConfig& cfg, RngStream& rng) {
  const auto& g = cfg.geometry;
  const auto dc = derived_constants(cfg);
  const int n = g.N_A;
  std::vector<ApPoint> points(static_cast<std::size_t>(n));
  for (auto& p : points) {
    const double radius = g.r_d * std::sqrt(uniform01(rng));
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    p = ApPoint{radius * std::cos(angle), radius * std::sin(angle), ApKind::RF, LinkState::NotApplicable};
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const int n_thz = g.n_thz();
  for (int i = 0; i < n_thz; ++i) {
    const auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
    auto& p = points[order[i]];
    p.kind = ApKind::THZ;
  }
  for (auto& p : points) {
    if (p.kind != ApKind::THZ) continue;
    const double d = distance_to_ue(p, cfg);
    p.link = uniform01(rng) < kappa_los(d, dc.beta, dc.delta_h) ? LinkState::LOS : LinkState::NLOS;
  }
  return points;
}

}  // namespace hexnet

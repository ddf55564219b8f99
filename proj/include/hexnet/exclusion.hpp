#pragma once

// Exclusion regions implied by max-BRSP association. When the UE is served by
// a tier-X AP at distance r, every tier-Y AP must sit beyond E_XY(r), the
// distance at which a tier-Y AP would deliver the same biased average power.
// E_XY(r) never drops below z_l = h_A - h_U; h_XY is the server distance at
// which the boundary leaves z_l.

#include <algorithm>
#include <cmath>
#include <limits>

#include "hexnet/antenna.hpp"
#include "hexnet/geometry.hpp"
#include "hexnet/lambert_w.hpp"
#include "hexnet/params.hpp"

namespace hexnet {

// Association tier of a server: LOS THz, NLOS THz, or RF.
enum class Tier { Los, Nlos, Rf };

// Biased average received power c * exp(-k d) * d^-alpha of one tier.
struct TierPowerLaw {
  double coefficient;
  double absorption;
  double alpha;

  double log_power(double d) const { return std::log(coefficient) - absorption * d - alpha * std::log(d); }
  double power(double d) const { return coefficient * std::exp(-absorption * d) * std::pow(d, -alpha); }
};

// Distance d at which law.power(d) == exp(log_level), i.e. the root of
// k d + alpha ln d = ln c - log_level. With absorption the root is
// (alpha/k) W0[(k/alpha) exp((ln c - log_level)/alpha)].
inline double distance_at_power(const TierPowerLaw& law, double log_level) {
  const double l = (std::log(law.coefficient) - log_level) / law.alpha;
  if (law.absorption == 0.0) return std::exp(l);
  const double ratio = law.absorption / law.alpha;
  return lambert_w0_of_exp(std::log(ratio) + l) / ratio;
}

class ExclusionRegions {
 public:
  explicit ExclusionRegions(const NetworkConfig& cfg) {
    const auto dc = derived_constants(cfg);
    const auto& r = cfg.radio;
    z_l_ = dc.delta_h;
    z_p_ = distance_support(cfg.geometry).z_p;
    thz_coefficient_ = r.B_T * r.P_T * dc.gamma_T * mean_desired_gain(cfg.antenna);
    los_ = {thz_coefficient_, r.k_a, r.alpha_L};
    nlos_ = {thz_coefficient_, r.k_a, r.alpha_N};
    rf_ = {r.P_R * dc.gamma_R, 0.0, r.alpha_R};
  }

  double z_l() const { return z_l_; }

  const TierPowerLaw& law(Tier t) const {
    switch (t) {
      case Tier::Los: return los_;
      case Tier::Nlos: return nlos_;
      case Tier::Rf: return rf_;
    }
    return rf_;
  }

  // E_XY(r): minimum distance of a tier-`other` AP given a tier-`server` AP at r.
  double boundary(Tier server, Tier other, double r) const {
    if (server == other) return r;
    if (thz_coefficient_ == 0.0) {
      if (other == Tier::Rf) return z_p_;
      if (server == Tier::Rf) return z_l_;
    }
    const auto [s, o] = comparable_laws(server, other);
    return std::max(z_l_, distance_at_power(o, s.log_power(r)));
  }

  // h_XY: server distance below which E_XY stays at z_l.
  double threshold(Tier server, Tier other) const {
    if (server == other) return z_l_;
    if (thz_coefficient_ == 0.0) return other == Tier::Rf ? z_l_ : std::numeric_limits<double>::infinity();
    const auto [s, o] = comparable_laws(server, other);
    return std::max(z_l_, distance_at_power(s, o.log_power(z_l_)));
  }

  double e_lr(double r) const { return boundary(Tier::Los, Tier::Rf, r); }
  double e_ln(double r) const { return boundary(Tier::Los, Tier::Nlos, r); }
  double e_nr(double r) const { return boundary(Tier::Nlos, Tier::Rf, r); }
  double e_nl(double r) const { return boundary(Tier::Nlos, Tier::Los, r); }
  double e_rl(double r) const { return boundary(Tier::Rf, Tier::Los, r); }
  double e_rn(double r) const { return boundary(Tier::Rf, Tier::Nlos, r); }

  double h_lr() const { return threshold(Tier::Los, Tier::Rf); }
  double h_ln() const { return threshold(Tier::Los, Tier::Nlos); }
  double h_nr() const { return threshold(Tier::Nlos, Tier::Rf); }
  double h_nl() const { return threshold(Tier::Nlos, Tier::Los); }
  double h_rl() const { return threshold(Tier::Rf, Tier::Los); }
  double h_rn() const { return threshold(Tier::Rf, Tier::Nlos); }

 private:
  // The two THz tiers share a coefficient that cancels between them; drop it
  // so the comparison stays finite when the bias is zero.
  std::pair<TierPowerLaw, TierPowerLaw> comparable_laws(Tier server, Tier other) const {
    auto s = law(server);
    auto o = law(other);
    if (server != Tier::Rf && other != Tier::Rf) s.coefficient = o.coefficient = 1.0;
    return {s, o};
  }

  double z_l_ = 0.0;
  double z_p_ = 0.0;
  double thz_coefficient_ = 0.0;
  TierPowerLaw los_{};
  TierPowerLaw nlos_{};
  TierPowerLaw rf_{};
};

// Boundaries seen by a server at r: towards the two tiers other than its own.
struct ExclusionPair {
  double first;   // RF for THz servers, LOS for an RF server
  double second;  // the other THz tier, or NLOS for an RF server
};

inline ExclusionPair exclusion_given_los(double r, const NetworkConfig& cfg) {
  const ExclusionRegions ex(cfg);
  return {ex.e_lr(r), ex.e_ln(r)};
}

inline ExclusionPair exclusion_given_nlos(double r, const NetworkConfig& cfg) {
  const ExclusionRegions ex(cfg);
  return {ex.e_nr(r), ex.e_nl(r)};
}

inline ExclusionPair exclusion_given_rf(double r, const NetworkConfig& cfg) {
  const ExclusionRegions ex(cfg);
  return {ex.e_rl(r), ex.e_rn(r)};
}

}  // namespace hexnet

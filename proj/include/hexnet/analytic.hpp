#pragma once

// Analytical coverage and rate of the reference UE.
//
// Conditioning structure: the serving AP of tier Q sits at distance x; each of
// the remaining APs is i.i.d. with density f_Z, restricted by the exclusion
// regions of the max-BRSP rule. Association probabilities and serving
// distance densities integrate the resulting product over x. Conditional
// coverage averages the Nakagami CCDF of the serving link over the desired
// gain atoms; the terms (s Y)^q e^{-s Y} / q! are recovered from s-derivatives
// of e^{-s sigma^2} L_I(s), which are carried exactly as jets through the
// interference integrals.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hexnet/antenna.hpp"
#include "hexnet/errors.hpp"
#include "hexnet/exclusion.hpp"
#include "hexnet/geometry.hpp"
#include "hexnet/jet.hpp"
#include "hexnet/params.hpp"
#include "hexnet/propagation.hpp"
#include "hexnet/quadrature.hpp"

namespace hexnet {

inline constexpr std::array<Tier, 3> kTiers{Tier::Los, Tier::Nlos, Tier::Rf};

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::Los: return "L";
    case Tier::Nlos: return "N";
    case Tier::Rf: return "R";
  }
  return "?";
}

// One value per association event.
template <class T>
struct TierMetrics {
  T los{};
  T nlos{};
  T rf{};

  T& operator[](Tier t) { return t == Tier::Los ? los : t == Tier::Nlos ? nlos : rf; }
  const T& operator[](Tier t) const { return t == Tier::Los ? los : t == Tier::Nlos ? nlos : rf; }
};

struct CoverageReport {
  TierMetrics<double> assoc;
  TierMetrics<double> cond_coverage;  // NaN for events of (near) zero probability
  double total_coverage = 0.0;
  TierMetrics<double> cond_rate;  // bits/s, NaN for events of (near) zero probability
  double total_rate = 0.0;
};

struct AnalyticOptions {
  // Relative tolerance of the outermost integral; every nested level is
  // tightened 10x relative to its parent.
  double rel_tol = 1e-6;
  double abs_tol = 1e-13;
};

inline constexpr double kMinEventProbability = 1e-12;

class AnalyticModel {
 public:
  enum class Weight { One, Los, Nlos };

  explicit AnalyticModel(const NetworkConfig& cfg, AnalyticOptions options = {})
      : cfg_(validate(cfg)), options_(options), support_(distance_support(cfg.geometry)), exclusion_(cfg) {
    if (cfg_.radio.B_T <= 0.0) {
      throw DomainError("analytic model requires B_T > 0; B_T = 0 is covered by the Monte-Carlo engine only");
    }
    const auto dc = derived_constants(cfg_);
    beta_ = dc.beta;
    gamma_T_ = dc.gamma_T;
    gamma_R_ = dc.gamma_R;
    n_thz_ = cfg_.geometry.n_thz();
    n_rf_ = cfg_.geometry.n_rf();
    desired_ = desired_gain_pmf(cfg_.antenna);
    interferer_ = interferer_gain_pmf(cfg_.antenna);
    build_breakpoints();
    assoc_ = compute_association();
  }

  const NetworkConfig& config() const { return cfg_; }
  const DistanceSupport& support() const { return support_; }
  const ExclusionRegions& exclusion() const { return exclusion_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  double distance_density(double z) const { return distance_pdf(z, support_, cfg_.geometry.v_0, cfg_.geometry.r_d); }

  double weight(Weight w, double z) const {
    switch (w) {
      case Weight::One: return 1.0;
      case Weight::Los: return kappa_los(z, beta_, support_.z_l);
      case Weight::Nlos: return kappa_nlos(z, beta_, support_.z_l);
    }
    return 1.0;
  }

  // Integral of f_Z(z) w(z) over [from, z_p].
  double tail(double from, Weight w) const {
    from = std::max(from, support_.z_l);
    if (from >= support_.z_p) return 0.0;
    Quadrature q = quad(3);
    q.breakpoints = {support_.z_m};
    auto f = [&](double z) { return distance_density(z) * weight(w, z); };
    return integrate(f, from, support_.z_p, q).value;
  }

  // Joint density of {serving AP at distance x, event t}: the integrand of
  // the association probability of t.
  double association_density(Tier t, double x) const {
    if (x < support_.z_l || x > support_.z_p) return 0.0;
    const double fz = distance_density(x);
    switch (t) {
      case Tier::Los:
      case Tier::Nlos: {
        if (n_thz_ == 0) return 0.0;
        const Tier other = t == Tier::Los ? Tier::Nlos : Tier::Los;
        const Weight own_w = t == Tier::Los ? Weight::Los : Weight::Nlos;
        const Weight other_w = t == Tier::Los ? Weight::Nlos : Weight::Los;
        const double rf_clear = n_rf_ > 0 ? std::pow(tail(exclusion_.boundary(t, Tier::Rf, x), Weight::One), n_rf_) : 1.0;
        if (rf_clear == 0.0) return 0.0;
        const double thz_clear =
            n_thz_ > 1 ? std::pow(tail(x, own_w) + tail(exclusion_.boundary(t, other, x), other_w), n_thz_ - 1) : 1.0;
        return n_thz_ * fz * weight(own_w, x) * rf_clear * thz_clear;
      }
      case Tier::Rf: {
        if (n_rf_ == 0) return 0.0;
        const double rf_clear = n_rf_ > 1 ? std::pow(tail(x, Weight::One), n_rf_ - 1) : 1.0;
        const double thz_clear =
            n_thz_ > 0 ? std::pow(tail(exclusion_.e_rl(x), Weight::Los) + tail(exclusion_.e_rn(x), Weight::Nlos), n_thz_)
                       : 1.0;
        return n_rf_ * fz * rf_clear * thz_clear;
      }
    }
    return 0.0;
  }

  const TierMetrics<double>& association() const { return assoc_; }

  double serving_distance_pdf(Tier t, double x) const {
    require_event(t);
    return association_density(t, x) / assoc_[t];
  }

  // Laplace transform of the interference given event t and serving distance x.
  double laplace(Tier t, double s, double x) const { return laplace_series(t, x, s, 0.0, 0).value(); }

  // Taylor coefficients in s of L_I around s: c[u] = L^(u)(s) / u!.
  Jet laplace_jet(Tier t, double s, double x, int order) const {
    const double h = s > 0.0 ? s : 1.0;
    Jet j = laplace_series(t, x, s, h, order);
    double scale = 1.0;
    for (int u = 1; u <= order; ++u) {
      scale /= h;
      j[u] *= scale;
    }
    return j;
  }

  // L_I(sigma0 + h eps) expanded in eps. The per-interferer factor is
  // 1 - (1/D) int f w (1 - kernel), integrated in complement form so that it
  // is exactly 1 at s = 0 and keeps its precision when the kernel is near 1.
  Jet laplace_series(Tier t, double x, double sigma0, double h, int order) const {
    const auto setup = interference_setup(t, x);
    if (setup.count == 0 || setup.normalizer <= 0.0) return Jet::constant(order, 1.0);
    Jet deficit = Jet::constant(order, 0.0);
    Quadrature q = quad(3);
    q.breakpoints = {support_.z_m};
    for (int c = 0; c < setup.n_classes; ++c) {
      const auto& cls = setup.classes[c];
      if (cls.from >= support_.z_p) continue;
      auto integrand = [&](double y) {
        Jet acc = Jet::constant(order, 0.0);
        const double mass = distance_density(y) * weight(cls.weight, y);
        if (mass == 0.0) return acc;
        const double base = cls.coefficient * std::exp(-cls.absorption * y) * std::pow(y, -cls.alpha) / cls.m;
        for (int k = 0; k < cls.n_gains; ++k) {
          // kernel (1 + (sigma0 + h eps) a)^-m = b^-m (1 + w eps)^-m
          const double a = base * cls.gains[k].gain;
          const double log_b = std::log1p(sigma0 * a);
          const double w = h * a / (1.0 + sigma0 * a);
          const double pm = cls.gains[k].probability * mass;
          acc[0] -= pm * std::expm1(-cls.m * log_b);
          double coeff = pm * std::exp(-cls.m * log_b);
          for (int u = 1; u <= order; ++u) {
            coeff *= -w * (cls.m + u - 1) / u;
            acc[u] -= coeff;
          }
        }
        return acc;
      };
      deficit += integrate(integrand, cls.from, support_.z_p, q).value;
    }
    Jet bracket = Jet::constant(order, 1.0) - deficit / setup.normalizer;
    return pow(bracket, setup.count);
  }

  // P[SINR >= threshold | serving tier t at distance x].
  double coverage_given_distance(Tier t, double x, double threshold) const {
    const auto& r = cfg_.radio;
    if (t == Tier::Rf) {
      const double s = threshold * std::pow(x, r.alpha_R) / (r.P_R * gamma_R_);
      const double noise = std::exp(-s * r.sigma2_R);
      if (noise == 0.0) return 0.0;
      return noise * laplace(t, s, x);
    }
    const int m = t == Tier::Los ? r.m_L : r.m_N;
    const double alpha = t == Tier::Los ? r.alpha_L : r.alpha_N;
    const double s_unit = m * threshold * std::exp(r.k_a * x) * std::pow(x, alpha) / (r.P_T * gamma_T_);
    double total = 0.0;
    for (const auto& atom : desired_.atoms) {
      if (atom.probability == 0.0) continue;
      const double sigma0 = s_unit / atom.gain;
      const double a = sigma0 * r.sigma2_T;
      // The noise-only coverage bounds the atom's contribution from above.
      if (gamma_unit_mean_ccdf(m, a / m) < 1e-17) continue;
      // g(eps) = exp(-a (1 + eps)) L_I(sigma0 (1 + eps)); the coverage term is
      // sum_q (-sigma0)^q g^(q)(sigma0) / q! = sum_q (-1)^q g_q.
      Jet noise = Jet::constant(m - 1, 0.0);
      double c = std::exp(-a);
      for (int u = 0; u < m; ++u) {
        noise[u] = c;
        c *= -a / (u + 1);
      }
      const Jet g = noise * laplace_series(t, x, sigma0, sigma0, m - 1);
      double term = 0.0;
      for (int q = 0; q < m; ++q) term += (q % 2 == 0 ? 1.0 : -1.0) * g[q];
      total += atom.probability * term;
    }
    return total;
  }

  double conditional_coverage(Tier t) const { return conditional_coverage(t, cfg_.radio.theta); }

  double conditional_coverage(Tier t, double threshold) const {
    require_event(t);
    auto f = [&](double x) {
      const double density = association_density(t, x);
      if (density == 0.0) return 0.0;
      return density * coverage_given_distance(t, x, threshold);
    };
    const double value = integrate(f, support_.z_l, support_.z_p, quad(1, breakpoints_)).value / assoc_[t];
    check_probability(value, "conditional coverage");
    return value;
  }

  // E[W log2(1 + SINR) | event t] = W/ln 2 * E_x[ int_0^inf P[SINR > u | x] / (1 + u) du ].
  double conditional_rate(Tier t) const {
    require_event(t);
    const double bandwidth = t == Tier::Rf ? cfg_.radio.W_R : cfg_.radio.W_T;
    auto f = [&](double x) {
      const double density = association_density(t, x);
      if (density == 0.0) return 0.0;
      auto ccdf = [&](double u) { return coverage_given_distance(t, x, u); };
      return density * integrate_semiinfinite(ccdf, quad(2)).value;
    };
    const double nats = integrate(f, support_.z_l, support_.z_p, quad(1, breakpoints_)).value / assoc_[t];
    return bandwidth / std::numbers::ln2 * nats;
  }

  bool event_defined(Tier t) const { return assoc_[t] > kMinEventProbability; }

  CoverageReport coverage_report() const {
    CoverageReport rep;
    rep.assoc = assoc_;
    for (Tier t : kTiers) {
      if (event_defined(t)) {
        rep.cond_coverage[t] = conditional_coverage(t);
        rep.total_coverage += assoc_[t] * rep.cond_coverage[t];
      } else {
        rep.cond_coverage[t] = std::nan("");
      }
    }
    rep.cond_rate = {std::nan(""), std::nan(""), std::nan("")};
    rep.total_rate = std::nan("");
    return rep;
  }

  CoverageReport rate_report() const {
    CoverageReport rep;
    rep.assoc = assoc_;
    rep.cond_coverage = {std::nan(""), std::nan(""), std::nan("")};
    rep.total_coverage = std::nan("");
    for (Tier t : kTiers) {
      if (event_defined(t)) {
        rep.cond_rate[t] = conditional_rate(t);
        rep.total_rate += assoc_[t] * rep.cond_rate[t];
      } else {
        rep.cond_rate[t] = std::nan("");
      }
    }
    return rep;
  }

  CoverageReport full_report() const {
    CoverageReport rep = coverage_report();
    const CoverageReport rate = rate_report();
    rep.cond_rate = rate.cond_rate;
    rep.total_rate = rate.total_rate;
    return rep;
  }

 private:
  struct InterfererClass {
    double from;
    Weight weight;
    double coefficient;  // transmit power times free-space gain
    double absorption;
    double alpha;
    int m;
    std::array<GainAtom, 4> gains;
    int n_gains;
  };

  struct InterferenceSetup {
    std::array<InterfererClass, 2> classes;
    int n_classes = 0;
    int count = 0;
    double normalizer = 0.0;
  };

  InterferenceSetup interference_setup(Tier t, double x) const {
    const auto& r = cfg_.radio;
    InterferenceSetup s;
    if (t == Tier::Rf) {
      s.count = std::max(n_rf_ - 1, 0);
      s.n_classes = 1;
      s.classes[0] = {x, Weight::One, r.P_R * gamma_R_, 0.0, r.alpha_R, 1, {{{1.0, 1.0}}}, 1};
      s.normalizer = tail(x, Weight::One);
      return s;
    }
    s.count = std::max(n_thz_ - 1, 0);
    s.n_classes = 2;
    const double los_from = t == Tier::Los ? x : exclusion_.e_nl(x);
    const double nlos_from = t == Tier::Nlos ? x : exclusion_.e_ln(x);
    const double pt = r.P_T * gamma_T_;
    s.classes[0] = {los_from, Weight::Los, pt, r.k_a, r.alpha_L, r.m_L, interferer_.atoms, 4};
    s.classes[1] = {nlos_from, Weight::Nlos, pt, r.k_a, r.alpha_N, r.m_N, interferer_.atoms, 4};
    s.normalizer = tail(los_from, Weight::Los) + tail(nlos_from, Weight::Nlos);
    return s;
  }

  Quadrature quad(int level, std::vector<double> breakpoints = {}) const {
    Quadrature q;
    q.rel_tol = options_.rel_tol * std::pow(10.0, -(level - 1));
    q.abs_tol = options_.abs_tol;
    q.breakpoints = std::move(breakpoints);
    return q;
  }

  void build_breakpoints() {
    breakpoints_ = {support_.z_l, support_.z_m, support_.z_p};
    for (Tier s : kTiers) {
      for (Tier o : kTiers) {
        if (s == o) continue;
        const double h = exclusion_.threshold(s, o);
        if (std::isfinite(h)) breakpoints_.push_back(h);
        // Server distance at which the boundary reaches z_p and z_m.
        const auto& ls = exclusion_.law(s);
        const auto& lo = exclusion_.law(o);
        if (s != Tier::Rf && o != Tier::Rf) {
          TierPowerLaw a = ls, b = lo;
          a.coefficient = b.coefficient = 1.0;
          breakpoints_.push_back(distance_at_power(a, b.log_power(support_.z_p)));
          breakpoints_.push_back(distance_at_power(a, b.log_power(support_.z_m)));
        } else {
          breakpoints_.push_back(distance_at_power(ls, lo.log_power(support_.z_p)));
          breakpoints_.push_back(distance_at_power(ls, lo.log_power(support_.z_m)));
        }
      }
    }
    std::erase_if(breakpoints_, [&](double b) { return !(b >= support_.z_l && b <= support_.z_p); });
    std::sort(breakpoints_.begin(), breakpoints_.end());
  }

  TierMetrics<double> compute_association() const {
    TierMetrics<double> a;
    Quadrature q = quad(1, breakpoints_);
    q.rel_tol *= 0.1;  // the simplex identity is checked to 1e-6 absolute
    // Rare events are still conditioned on, so they need relative accuracy.
    q.abs_tol = std::min(q.abs_tol, 1e-7 * kMinEventProbability);
    for (Tier t : kTiers) {
      a[t] = integrate([&](double x) { return association_density(t, x); }, support_.z_l, support_.z_p, q).value;
    }
    return a;
  }

  void require_event(Tier t) const {
    if (!event_defined(t)) {
      throw NumericalError(NumericalError::Kind::DegenerateEvent,
                           std::string("association event ") + tier_name(t) + " has probability " +
                               std::to_string(assoc_[t]));
    }
  }

  static void check_probability(double p, const char* what) {
    if (!(p >= -1e-6 && p <= 1.0 + 1e-6)) {
      throw NumericalError(NumericalError::Kind::NumericalInconsistency,
                           std::string(what) + " evaluated to " + std::to_string(p));
    }
  }

  NetworkConfig cfg_;
  AnalyticOptions options_;
  DistanceSupport support_;
  ExclusionRegions exclusion_;
  double beta_ = 0.0;
  double gamma_T_ = 0.0;
  double gamma_R_ = 0.0;
  int n_thz_ = 0;
  int n_rf_ = 0;
  GainPmf desired_{};
  GainPmf interferer_{};
  std::vector<double> breakpoints_;
  TierMetrics<double> assoc_;
};

inline TierMetrics<double> assoc_probabilities(const NetworkConfig& cfg) { return AnalyticModel(cfg).association(); }

inline double serving_distance_pdf(Tier t, double x, const NetworkConfig& cfg) {
  return AnalyticModel(cfg).serving_distance_pdf(t, x);
}

inline double laplace_interference(Tier t, double s, double x_serv, const NetworkConfig& cfg) {
  return AnalyticModel(cfg).laplace(t, s, x_serv);
}

inline Jet laplace_interference(Tier t, const Jet& s, double x_serv, const NetworkConfig& cfg) {
  return AnalyticModel(cfg).laplace_jet(t, s.value(), x_serv, s.order());
}

inline double conditional_coverage(Tier t, const NetworkConfig& cfg) { return AnalyticModel(cfg).conditional_coverage(t); }

inline double conditional_rate(Tier t, const NetworkConfig& cfg) { return AnalyticModel(cfg).conditional_rate(t); }

inline CoverageReport coverage(const NetworkConfig& cfg) { return AnalyticModel(cfg).coverage_report(); }

inline CoverageReport rate(const NetworkConfig& cfg) { return AnalyticModel(cfg).rate_report(); }

}  // namespace hexnet

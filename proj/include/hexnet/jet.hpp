#pragma once

// Univariate truncated Taylor series ("jets"). A jet of order K at s0 holds
// c[u] = f^(u)(s0) / u! for u = 0..K; arithmetic composes them exactly up to
// truncation, which yields exact derivatives of composite expressions.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>

namespace hexnet {

inline constexpr int kMaxJetOrder = 9;

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, double value = 0.0) : order_(order) {
    assert(order >= 0 && order <= kMaxJetOrder);
    c_[0] = value;
  }

  static Jet constant(int order, double value) { return Jet(order, value); }

  // The independent variable s = s0 + scale * eps, expanded in eps.
  static Jet variable(int order, double s0, double scale = 1.0) {
    Jet j(order, s0);
    if (order >= 1) j.c_[1] = scale;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double operator[](int u) const { return c_[u]; }
  double& operator[](int u) { return c_[u]; }

  // u-th derivative with respect to the expansion variable.
  double derivative(int u) const {
    double f = 1.0;
    for (int i = 2; i <= u; ++i) f *= i;
    return c_[u] * f;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (int i = 0; i <= order_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (int i = 0; i <= order_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator*=(double v) {
    for (int i = 0; i <= order_; ++i) c_[i] *= v;
    return *this;
  }
  Jet& operator/=(double v) { return *this *= 1.0 / v; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double v) { return a += v; }
  friend Jet operator+(double v, Jet a) { return a += v; }
  friend Jet operator-(Jet a, double v) { return a += -v; }
  friend Jet operator*(Jet a, double v) { return a *= v; }
  friend Jet operator*(double v, Jet a) { return a *= v; }
  friend Jet operator/(Jet a, double v) { return a /= v; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    Jet r(a.order_);
    const double inv = 1.0 / a.c_[0];
    r.c_[0] = inv;
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += a.c_[i] * r.c_[k - i];
      r.c_[k] = -inv * s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet exp(const Jet& a) {
    Jet r(a.order_);
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += i * a.c_[i] * r.c_[k - i];
      r.c_[k] = s / k;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r(a.order_);
    r.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i < k; ++i) s += i * r.c_[i] * a.c_[k - i];
      r.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return r;
  }

  // a^p for real p; needs a.value() > 0 unless p is a nonnegative integer.
  friend Jet pow(const Jet& a, double p) {
    Jet r(a.order_);
    r.c_[0] = std::pow(a.c_[0], p);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += ((p + 1.0) * i - k) * a.c_[i] * r.c_[k - i];
      r.c_[k] = s / (k * a.c_[0]);
    }
    return r;
  }

  // a^n by repeated squaring; keeps the sign pattern of alternating series.
  friend Jet pow(Jet a, int n) {
    assert(n >= 0);
    Jet r = Jet::constant(a.order_, 1.0);
    while (n > 0) {
      if (n & 1) r = r * a;
      n >>= 1;
      if (n > 0) a = a * a;
    }
    return r;
  }

  friend double magnitude(const Jet& a) {
    double m = 0.0;
    for (int i = 0; i <= a.order_; ++i) m = std::max(m, std::abs(a.c_[i]));
    return m;
  }

 private:
  void check([[maybe_unused]] const Jet& o) const { assert(o.order_ == order_); }

  int order_ = 0;
  std::array<double, kMaxJetOrder + 1> c_{};
};

inline double magnitude(double x) { return std::abs(x); }

// Taylor coefficients of f around s0 when f is given as a jet-valued function.
template <class F>
Jet jet_eval(F&& f, double s0, int order) {
  return f(Jet::variable(order, s0));
}

}  // namespace hexnet

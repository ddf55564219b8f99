#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature over piecewise-smooth
// integrands. The value type may be double or any type with +, scalar *,
// and a magnitude() overload (e.g. Jet), so derivatives can be carried
// through an integral component-wise.

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "hexnet/errors.hpp"
#include "hexnet/jet.hpp"

namespace hexnet {

struct Quadrature {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 50;
  int max_panels = 20000;
  std::vector<double> breakpoints;
};

template <class T>
struct QuadResult {
  T value;
  double error;
  int evaluations;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (nonnegative half) with Kronrod and Gauss weights.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto gauss_kronrod_15(F& f, double a, double b) {
  using T = decltype(f(a));
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kWgk[j];
    if (j % 2 == 1) gauss += sum * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return Panel<T>{a, b, kronrod, magnitude(kronrod - gauss), 0};
}

}  // namespace detail

// Integrates f over [a, b]. Declared breakpoints inside (a, b) always start
// a new panel. Stops once the summed |K15 - G7| estimate is below
// max(rel_tol * |value|, abs_tol).
template <class F>
auto integrate(F&& f, double a, double b, const Quadrature& q = {}) -> QuadResult<decltype(f(a))> {
  using T = decltype(f(a));
  using detail::Panel;

  if (!(a < b)) {
    T zero = f(a) * 0.0;
    return {zero, 0.0, 1};
  }

  std::vector<double> edges{a};
  for (double p : q.breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel<T>> heap;
  int evaluations = 0;
  auto total = [&]() {
    auto copy = heap;
    T value = copy.top().value;
    double error = copy.top().error;
    copy.pop();
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair<T, double>{value, error};
  };

  T value{};
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto panel = detail::gauss_kronrod_15(f, edges[i], edges[i + 1]);
    evaluations += 15;
    if (i == 0) {
      value = panel.value;
    } else {
      value += panel.value;
    }
    error += panel.error;
    heap.push(std::move(panel));
  }

  while (error > std::max(q.rel_tol * magnitude(value), q.abs_tol)) {
    Panel<T> worst = heap.top();
    if (worst.depth >= q.max_depth || static_cast<int>(heap.size()) >= q.max_panels) {
      std::ostringstream msg;
      msg << "integrate: tolerance not reached on [" << a << ", " << b << "]; worst panel [" << worst.a << ", "
          << worst.b << "] depth " << worst.depth << " error " << worst.error << ", total error " << error;
      throw NumericalError(NumericalError::Kind::MaxDepthExceeded, msg.str());
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    left.depth = right.depth = worst.depth + 1;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    // Refresh the running sums now and then so cancellation cannot drift.
    if (heap.size() % 64 == 0) std::tie(value, error) = total();
  }
  std::tie(value, error) = total();
  return {value, error, evaluations};
}

// Integral of f(t) / (1 + t) over [0, inf) through t = u / (1 - u).
template <class F>
auto integrate_semiinfinite(F&& f, const Quadrature& q = {}) -> QuadResult<decltype(f(0.0))> {
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    const double t = u / one_minus;
    // dt / (1 + t) = du / (1 - u)
    return f(t) * (1.0 / one_minus);
  };
  return integrate(mapped, 0.0, 1.0, q);
}

}  // namespace hexnet

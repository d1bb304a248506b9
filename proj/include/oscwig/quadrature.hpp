#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace oscwig {

struct QuadratureReport {
  double error_estimate = 0.0;  // accumulated local Richardson estimates
  int unresolved = 0;           // leaf intervals that hit the depth limit above tolerance
};

namespace detail {

inline double qabs(double v) { return std::abs(v); }
inline double qabs(const std::complex<double>& v) { return std::abs(v); }

template <class F, class V>
V simpson_refine(const F& f, double a, double m, double b, V fa, V fm, V fb,
                 V whole, double tol, int depth, QuadratureReport& rep) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const V flm = f(lm);
  const V frm = f(rm);
  const double h12 = (b - a) / 12.0;
  const V left = h12 * (fa + 4.0 * flm + fm);
  const V right = h12 * (fm + 4.0 * frm + fb);
  const V delta = left + right - whole;
  if (qabs(delta) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0 && qabs(delta) > 15.0 * tol) ++rep.unresolved;
    rep.error_estimate += qabs(delta) / 15.0;
    return left + right + (1.0 / 15.0) * delta;
  }
  return simpson_refine(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, rep) +
         simpson_refine(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, rep);
}

}  // namespace detail

/// Adaptive Simpson rule with absolute tolerance and interval bisection.
template <class F>
auto adaptive_simpson(const F& f, double a, double b, double abs_tol,
                      int max_depth = 40, QuadratureReport* report = nullptr)
    -> decltype(f(a)) {
  using V = decltype(f(a));
  if (a == b) return V{};
  QuadratureReport local;
  QuadratureReport& rep = report ? *report : local;
  const double m = 0.5 * (a + b);
  const V fa = f(a);
  const V fm = f(m);
  const V fb = f(b);
  const V whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::simpson_refine(f, a, m, b, fa, fm, fb, whole,
                                std::max(abs_tol, 0.0), max_depth, rep);
}

/// Adaptive integration of an oscillatory integrand: the range is pre-split
/// into panels no wider than a quarter oscillation of angular frequency
/// max_freq, then each panel is refined adaptively. abs_tol is the total
/// absolute error budget for the whole range.
template <class F>
auto integrate_oscillatory(const F& f, double a, double b, double max_freq,
                           double abs_tol, int max_depth = 40,
                           QuadratureReport* report = nullptr) -> decltype(f(a)) {
  using V = decltype(f(a));
  const double len = b - a;
  if (len == 0.0) return V{};
  const double cycles = std::abs(len) * std::max(max_freq, 0.0) / (2.0 * std::numbers::pi);
  const int panels = std::clamp(static_cast<int>(std::ceil(4.0 * cycles)) + 4, 8, 400000);
  QuadratureReport local;
  QuadratureReport& rep = report ? *report : local;
  V total{};
  double x0 = a;
  for (int i = 0; i < panels; ++i) {
    const double x1 = a + len * (i + 1.0) / panels;
    total += adaptive_simpson(f, x0, x1, abs_tol / panels, max_depth, &rep);
    x0 = x1;
  }
  return total;
}

/// Trapezoid on [lo, hi] with node doubling until two successive estimates
/// differ by less than abs_tol (or the node budget is exhausted).
template <class F>
double trapezoid_refine(const F& f, double lo, double hi, int start_nodes,
                        double abs_tol, int max_nodes = (1 << 22)) {
  int n = std::max(start_nodes, 9);
  if (n % 2 == 0) ++n;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  while (true) {
    const double h = (hi - lo) / (n - 1);
    double acc = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n - 1; ++i) acc += f(lo + i * h);
    value = acc * h;
    if (std::isfinite(prev) && std::abs(value - prev) < abs_tol) return value;
    if (2 * n - 1 > max_nodes) return value;
    prev = value;
    n = 2 * n - 1;
  }
}

}  // namespace oscwig

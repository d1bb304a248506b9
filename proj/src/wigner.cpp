#include "oscwig/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscwig/errors.hpp"
#include "oscwig/quadrature.hpp"
#include "oscwig/special_functions.hpp"

namespace oscwig {

namespace {

constexpr double kPi = std::numbers::pi;

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Oscillation wavelength of W along a P-line (radial Laguerre fringe scale for
// eigenstates, Gaussian width for coherent states).
double p_resolution_scale(const OscillatorParams& params, const QuantumState& state) {
  const double ps = params.momentum_scale();
  if (state.as_coherent()) return 0.7 * ps;
  return kPi * ps / std::sqrt(2.0 * state.max_level() + 1.0);
}

double x_resolution_scale(const OscillatorParams& params, const QuantumState& state) {
  const double a = params.length_scale();
  if (state.as_coherent()) return 0.7 * a;
  return kPi * a / std::sqrt(2.0 * state.max_level() + 1.0);
}

}  // namespace

double wigner_quadrature(const OscillatorParams& params, const QuantumState& state,
                         PhaseSpacePoint pt, const WignerQuadratureOptions& options) {
  const double hbar = params.hbar;
  const double rx = support_radius_x(params, state);
  const double s_max = 2.0 * (rx + std::abs(pt.X));
  const double k_total = std::abs(pt.P) / hbar +
                         support_radius_p(params, state) / hbar +
                         1.0 / params.length_scale();
  // Tolerance for the raw s-integral (dimensionless): W error target times 2 pi hbar.
  const double i_tol = 2.0 * options.abs_tol_factor;

  auto integrand = [&](double s) {
    return std::conj(psi(params, state, pt.X - 0.5 * s)) *
           psi(params, state, pt.X + 0.5 * s) *
           std::polar(1.0, -pt.P * s / hbar);
  };

  QuadratureReport rep;
  const std::complex<double> raw =
      integrate_oscillatory(integrand, -s_max, s_max, k_total, i_tol,
                            options.max_depth, &rep);
  if (rep.unresolved > 0 && rep.error_estimate > 2.0e-10)
    throw NonConvergence("wigner_quadrature: refinement exhausted before reaching tolerance");
  return raw.real() / (2.0 * kPi * hbar);
}

double wigner_ground(const OscillatorParams& params, PhaseSpacePoint pt) {
  const double a = params.length_scale();
  const double xs = pt.X / a;
  const double ps = pt.P * a / params.hbar;
  return std::exp(-xs * xs - ps * ps) / (kPi * params.hbar);
}

double wigner_coherent(const OscillatorParams& params, std::complex<double> z,
                       PhaseSpacePoint pt) {
  const double a = params.length_scale();
  const double x0 = std::numbers::sqrt2 * a * z.real();
  const double p0 = std::numbers::sqrt2 * (params.hbar / a) * z.imag();
  const double xs = (pt.X - x0) / a;
  const double ps = (pt.P - p0) * a / params.hbar;
  return std::exp(-xs * xs - ps * ps) / (kPi * params.hbar);
}

double wigner_eigen_exact(const OscillatorParams& params, int n, PhaseSpacePoint pt) {
  if (n < 0) throw std::invalid_argument("wigner_eigen_exact: n must be >= 0");
  const double a = params.length_scale();
  const double xs = pt.X / a;
  const double ps = pt.P * a / params.hbar;
  const double xi = xs * xs + ps * ps;
  return parity_sign(n) * laguerre_scaled(n, 2.0 * xi) / (kPi * params.hbar);
}

double wigner_scaled_energy(int n, double r) {
  if (n < 1) throw std::invalid_argument("wigner_scaled_energy: n must be >= 1");
  if (!(r >= 0.0)) throw std::invalid_argument("wigner_scaled_energy: r must be >= 0");
  return parity_sign(n) * laguerre_scaled(n, 4.0 * n * r);
}

double wigner_averaged(const OscillatorParams& params, int n, int half_width,
                       PhaseSpacePoint pt) {
  if (half_width < 0 || n - half_width < 0)
    throw std::invalid_argument("wigner_averaged: require 0 <= N_W <= n");
  double acc = 0.0;
  for (int m = n - half_width; m <= n + half_width; ++m)
    acc += wigner_eigen_exact(params, m, pt);
  return acc / (2 * half_width + 1);
}

double wigner_averaged_scaled_energy(int n, int half_width, double r) {
  if (n < 1) throw std::invalid_argument("wigner_averaged_scaled_energy: n must be >= 1");
  if (half_width < 0 || n - half_width < 0)
    throw std::invalid_argument("wigner_averaged_scaled_energy: require 0 <= N_W <= n");
  const double arg = 4.0 * n * r;  // abscissa fixed by the center level
  double acc = 0.0;
  for (int m = n - half_width; m <= n + half_width; ++m)
    acc += parity_sign(m) * laguerre_scaled(m, arg);
  return acc / (2 * half_width + 1);
}

std::complex<double> k_function(const OscillatorParams& params,
                                std::complex<double> z1, std::complex<double> z2,
                                PhaseSpacePoint pt) {
  if (std::abs(z1) > 30.0 || std::abs(z2) > 30.0)
    throw std::invalid_argument("k_function: |z| > 30 is outside the validated range");
  const double a = params.length_scale();
  const double xs = pt.X / a;
  const double ps = pt.P * a / params.hbar;
  const std::complex<double> c(xs, ps);  // X/a + i P a/hbar
  const std::complex<double> expo =
      -xs * xs - ps * ps - 0.5 * (std::norm(z1) + std::norm(z2)) -
      std::conj(z1) * z2 +
      std::numbers::sqrt2 * (std::conj(z1) * c + z2 * std::conj(c));
  return std::exp(expo) / (kPi * params.hbar);
}

double wigner_eigen_from_k(const OscillatorParams& params, int n, PhaseSpacePoint pt,
                           double radius) {
  if (n < 0) throw std::invalid_argument("wigner_eigen_from_k: n must be >= 0");
  if (!(radius > 0.0 && radius < 1.5))
    throw std::invalid_argument("wigner_eigen_from_k: radius must lie in (0, 1.5)");
  // 4n+8 nodes leave visible aliasing in the n=0 coefficient; 4n+16 puts the
  // first aliased mode below 1e-9 for radius <= 0.8.
  const int m = 4 * n + 16;
  const double strip = std::exp(radius * radius);  // removes e^{-(|z1|^2+|z2|^2)/2}
  std::complex<double> acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double alpha = 2.0 * kPi * j / m;
    const std::complex<double> w = std::polar(radius, alpha);
    for (int k = 0; k < m; ++k) {
      const double beta = 2.0 * kPi * k / m;
      const std::complex<double> v = std::polar(radius, beta);
      const std::complex<double> phi =
          k_function(params, std::conj(w), v, pt) * strip;
      acc += phi * std::polar(1.0, -n * (alpha + beta));
    }
  }
  const std::complex<double> cnn =
      acc / (static_cast<double>(m) * static_cast<double>(m) *
             std::pow(radius, 2.0 * n));
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return factorial * cnn.real();
}

double wigner_point(const OscillatorParams& params, const QuantumState& state,
                    PhaseSpacePoint pt) {
  if (const auto* e = state.as_eigenstate())
    return wigner_eigen_exact(params, e->n, pt);
  if (const auto* c = state.as_coherent()) return wigner_coherent(params, c->z, pt);
  return wigner_quadrature(params, state, pt);
}

namespace {

// Shared 1-D marginal machinery: refined trapezoid of W along a line, with a
// boundary-versus-peak support check.
double marginal_line(const OscillatorParams& params, const QuantumState& state,
                     bool fix_x, double fixed, bool* support_truncated) {
  const double range = fix_x ? support_radius_p(params, state)
                             : support_radius_x(params, state);
  const double lambda = fix_x ? p_resolution_scale(params, state)
                              : x_resolution_scale(params, state);
  auto f = [&](double t) {
    const PhaseSpacePoint pt = fix_x ? PhaseSpacePoint{fixed, t}
                                     : PhaseSpacePoint{t, fixed};
    return wigner_point(params, state, pt);
  };
  const int start_nodes = static_cast<int>(std::ceil(2.0 * range / (lambda / 6.0)));
  // Result has units of a density: 1/a (position) or a/hbar (momentum).
  const double scale = fix_x ? 1.0 / params.length_scale()
                             : 1.0 / params.momentum_scale();
  const double value = trapezoid_refine(f, -range, range, start_nodes, 1e-11 * scale);
  if (support_truncated) {
    double peak = 0.0;
    for (int i = 0; i <= 32; ++i)
      peak = std::max(peak, std::abs(f(-range + 2.0 * range * i / 32.0)));
    const double edge = std::max(std::abs(f(-range)), std::abs(f(range)));
    *support_truncated = peak > 0.0 && edge > 1e-10 * peak;
  }
  return value;
}

}  // namespace

double marginal_position(const OscillatorParams& params, const QuantumState& state,
                         double X, bool* support_truncated) {
  return marginal_line(params, state, true, X, support_truncated);
}

double marginal_momentum(const OscillatorParams& params, const QuantumState& state,
                         double P, bool* support_truncated) {
  return marginal_line(params, state, false, P, support_truncated);
}

std::complex<double> momentum_wavefunction(const OscillatorParams& params,
                                           const QuantumState& state, double P) {
  const double rx = support_radius_x(params, state);
  // highest spatial frequency actually present in psi, plus the transform kernel
  double k_psi = params.momentum_scale() *
                 (std::sqrt(2.0 * state.max_level() + 1.0) + 2.0) / params.hbar;
  if (const auto* c = state.as_coherent())
    k_psi = (std::abs(std::numbers::sqrt2 * params.momentum_scale() * c->z.imag()) +
             4.0 * params.momentum_scale()) /
            params.hbar;
  const double k_total = std::abs(P) / params.hbar + k_psi;
  auto f = [&](double x) {
    return psi(params, state, x) * std::polar(1.0, -P * x / params.hbar);
  };
  const double tol = 1e-10 * std::sqrt(params.length_scale());
  const std::complex<double> raw = integrate_oscillatory(f, -rx, rx, k_total, tol);
  return raw / std::sqrt(2.0 * kPi * params.hbar);
}

double weyl_moment(const OscillatorParams& params, const QuantumState& state, int k,
                   int l, bool* support_truncated) {
  if (k < 0 || l < 0 || k + l > 4)
    throw std::invalid_argument("weyl_moment: require k, l >= 0 and k + l <= 4");

  const double a = params.length_scale();
  const double ps = params.momentum_scale();
  const double energy = state.mean_energy(params);
  const double x_turn = std::sqrt(2.0 * energy / (params.mass * params.omega * params.omega));
  const double p_turn = std::sqrt(2.0 * params.mass * energy);
  double ex = x_turn + 8.0 * a;
  double ep = p_turn + 8.0 * ps;
  if (const auto* c = state.as_coherent()) {
    ex = std::abs(std::numbers::sqrt2 * a * c->z.real()) + 8.0 * a;
    ep = std::abs(std::numbers::sqrt2 * ps * c->z.imag()) + 8.0 * ps;
  }

  const double lx = x_resolution_scale(params, state);
  const double lp = p_resolution_scale(params, state);
  int nx = std::max(129, static_cast<int>(std::ceil(2.0 * ex / (lx / 6.0))));
  int np = std::max(129, static_cast<int>(std::ceil(2.0 * ep / (lp / 6.0))));
  if (nx % 2 == 0) ++nx;
  if (np % 2 == 0) ++np;

  auto evaluate = [&](int mx, int mp) {
    const double dx = 2.0 * ex / (mx - 1);
    const double dp = 2.0 * ep / (mp - 1);
    double acc = 0.0;
    for (int i = 0; i < mx; ++i) {
      const double x = -ex + i * dx;
      const double wi = (i == 0 || i == mx - 1) ? 0.5 : 1.0;
      const double xk = std::pow(x, k);
      double row = 0.0;
      for (int j = 0; j < mp; ++j) {
        const double p = -ep + j * dp;
        const double wj = (j == 0 || j == mp - 1) ? 0.5 : 1.0;
        row += wj * xk * std::pow(p, l) * wigner_point(params, state, {x, p});
      }
      acc += wi * row;
    }
    return acc * dx * dp;
  };

  const double moment_scale = std::pow(ex, k) * std::pow(ep, l);
  double value = evaluate(nx, np);
  for (int round = 0; round < 3; ++round) {
    const int nx2 = 2 * nx - 1;
    const int np2 = 2 * np - 1;
    const double refined = evaluate(nx2, np2);
    const bool converged =
        std::abs(refined - value) <
        std::max(1e-8 * std::abs(refined), 1e-12 * moment_scale);
    value = refined;
    nx = nx2;
    np = np2;
    if (converged) break;
  }

  if (support_truncated) {
    // Peak and boundary of the integrand along the grid edges.
    double peak = 0.0, edge = 0.0;
    const int samples = 64;
    for (int i = 0; i <= samples; ++i) {
      const double x = -ex + 2.0 * ex * i / samples;
      const double p = -ep + 2.0 * ep * i / samples;
      peak = std::max(peak, std::abs(std::pow(x, k) *
                                     wigner_point(params, state, {x, 0.0})));
      edge = std::max(edge, std::abs(std::pow(x, k) * std::pow(ep, l) *
                                     wigner_point(params, state, {x, ep})));
      edge = std::max(edge, std::abs(std::pow(ex, k) * std::pow(p, l) *
                                     wigner_point(params, state, {ex, p})));
    }
    *support_truncated = peak > 0.0 && edge > 1e-10 * peak;
  }
  return value;
}

ScaledEnergyCurve scaled_energy_curve(int n, double r_max, int samples, int window) {
  if (n < 1) throw std::invalid_argument("scaled_energy_curve: n must be >= 1");
  if (!(r_max > 0.0)) throw std::invalid_argument("scaled_energy_curve: r_max must be > 0");
  if (samples < 2) throw std::invalid_argument("scaled_energy_curve: need at least 2 samples");
  if (window < 0 || n - window < 0)
    throw std::invalid_argument("scaled_energy_curve: require 0 <= window <= n");
  ScaledEnergyCurve curve;
  curve.n = n;
  curve.r.reserve(samples);
  curve.w.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = r_max * i / (samples - 1);
    curve.r.push_back(r);
    curve.w.push_back(window > 0 ? wigner_averaged_scaled_energy(n, window, r)
                                 : wigner_scaled_energy(n, r));
  }
  return curve;
}

PhaseGrid auto_grid(const OscillatorParams& params, const QuantumState& state,
                    int nx, int np, double padding_a) {
  const double a = params.length_scale();
  const double ps = params.momentum_scale();
  double ex, ep;
  if (const auto* c = state.as_coherent()) {
    ex = std::abs(std::numbers::sqrt2 * a * c->z.real()) + padding_a * a;
    ep = std::abs(std::numbers::sqrt2 * ps * c->z.imag()) + padding_a * ps;
  } else {
    const double root = std::sqrt(2.0 * state.max_level() + 1.0);
    ex = a * (root + padding_a);
    ep = ps * (root + padding_a);
  }
  return PhaseGrid(-ex, ex, -ep, ep, nx, np);
}

}  // namespace oscwig

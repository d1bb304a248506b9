#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscwig/errors.hpp"
#include "oscwig/quadrature.hpp"
#include "oscwig/special_functions.hpp"
#include "oscwig/wigner.hpp"

using namespace oscwig;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("wigner closed forms at the origin") {
  OscillatorParams prm(1.0, 1.0, 0.7);
  const double peak = 1.0 / (std::numbers::pi * prm.hbar);
  CHECK(wigner_ground(prm, {0.0, 0.0}) == peak);
  for (int n : {0, 1, 2, 3, 8, 9, 17, 60}) {
    const double expect = (n % 2 == 0) ? peak : -peak;
    CHECK(wigner_eigen_exact(prm, n, {0.0, 0.0}) == expect);
  }
}

TEST_CASE("wigner_ground anchor values and quadrature oracle") {
  OscillatorParams prm;
  const double peak = 1.0 / std::numbers::pi;
  CHECK(wigner_ground(prm, {prm.length_scale(), 0.0}) ==
        doctest::Approx(peak * std::exp(-1.0)).epsilon(1e-14));
  const auto st = QuantumState::eigenstate(0);
  std::mt19937_64 gen(11);
  for (int k = 0; k < 12; ++k) {
    const PhaseSpacePoint pt{urand(gen, -3.0, 3.0), urand(gen, -3.0, 3.0)};
    CHECK(std::abs(wigner_ground(prm, pt) - wigner_quadrature(prm, st, pt)) < 1e-10);
  }
}

TEST_CASE("wigner_coherent reduces to the ground state at z=0") {
  OscillatorParams prm(1.0, 2.0, 0.31);
  std::mt19937_64 gen(12);
  for (int k = 0; k < 8; ++k) {
    const PhaseSpacePoint pt{urand(gen, -1.0, 1.0), urand(gen, -2.0, 2.0)};
    CHECK(wigner_coherent(prm, 0.0, pt) == wigner_ground(prm, pt));
  }
}

TEST_CASE("wigner_coherent peak location for real z") {
  OscillatorParams prm;
  const double a = prm.length_scale();
  const PhaseSpacePoint peak_pt{3.0 * std::numbers::sqrt2 * a, 0.0};
  CHECK(wigner_coherent(prm, 3.0, peak_pt) ==
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(wigner_coherent(prm, 3.0, {peak_pt.X + 0.3, 0.1}) <
        wigner_coherent(prm, 3.0, peak_pt));
}

TEST_CASE("wigner_coherent matches the defining-integral quadrature") {
  OscillatorParams prm;
  const std::complex<double> z{1.0, 2.0};
  const auto st = QuantumState::coherent(z);
  std::mt19937_64 gen(13);
  double worst = 0.0;
  for (int k = 0; k < 12; ++k) {
    const PhaseSpacePoint pt{urand(gen, -2.0, 5.0), urand(gen, -1.0, 6.0)};
    worst = std::max(worst, std::abs(wigner_coherent(prm, z, pt) -
                                     wigner_quadrature(prm, st, pt)));
  }
  CHECK(worst < 1e-9 / std::numbers::pi);
}

TEST_CASE("wigner_eigen_exact matches the defining-integral quadrature") {
  OscillatorParams prm;
  std::mt19937_64 gen(14);
  for (int n : {7, 9}) {
    const auto st = QuantumState::eigenstate(n);
    const double xm = std::sqrt(2.0 * n + 1.0) + 1.5;
    double worst = 0.0;
    for (int k = 0; k < 25; ++k) {
      const PhaseSpacePoint pt{urand(gen, -xm, xm), urand(gen, -xm, xm)};
      worst = std::max(worst, std::abs(wigner_eigen_exact(prm, n, pt) -
                                       wigner_quadrature(prm, st, pt)));
    }
    CHECK(worst < 1e-9 / std::numbers::pi);
  }
}

TEST_CASE("wigner_quadrature flags non-convergence at a tiny depth limit") {
  OscillatorParams prm;
  WignerQuadratureOptions opt;
  opt.max_depth = 1;
  CHECK_THROWS_AS(
      wigner_quadrature(prm, QuantumState::eigenstate(9), {0.4, 0.7}, opt),
      NonConvergence);
}

TEST_CASE("wigner_eigen_exact depends on the phase-space point only through xi") {
  OscillatorParams prm;
  // (3,4), (5,0), (0,5), (4,3) all have xi = 25 exactly
  const double w1 = wigner_eigen_exact(prm, 14, {3.0, 4.0});
  CHECK(w1 == wigner_eigen_exact(prm, 14, {5.0, 0.0}));
  CHECK(w1 == wigner_eigen_exact(prm, 14, {0.0, 5.0}));
  CHECK(w1 == wigner_eigen_exact(prm, 14, {4.0, 3.0}));
  // generic equal-xi pairs constructed by rotation
  std::mt19937_64 gen(15);
  for (int k = 0; k < 20; ++k) {
    const double xi = urand(gen, 0.3, 40.0);
    const double th = urand(gen, 0.0, 2.0 * std::numbers::pi);
    const PhaseSpacePoint A{std::sqrt(xi) * std::cos(th), std::sqrt(xi) * std::sin(th)};
    const PhaseSpacePoint B{std::sqrt(xi), 0.0};
    CHECK(std::abs(wigner_eigen_exact(prm, 17, A) - wigner_eigen_exact(prm, 17, B)) <
          1e-13 / std::numbers::pi);
  }
}

TEST_CASE("wigner parity: W(X,P) = W(-X,-P) for eigenstates, W_z = W_-z mirrored") {
  OscillatorParams prm;
  std::mt19937_64 gen(16);
  for (int k = 0; k < 10; ++k) {
    const PhaseSpacePoint pt{urand(gen, -4.0, 4.0), urand(gen, -4.0, 4.0)};
    const PhaseSpacePoint mirrored{-pt.X, -pt.P};
    CHECK(wigner_eigen_exact(prm, 11, pt) == wigner_eigen_exact(prm, 11, mirrored));
    const std::complex<double> z{0.7, -1.1};
    CHECK(wigner_coherent(prm, z, pt) == wigner_coherent(prm, -z, mirrored));
  }
}

TEST_CASE("coherent rotation covariance under z(t) = z e^{-i omega t}") {
  OscillatorParams prm(1.3, 0.8, 1.7);
  std::mt19937_64 gen(17);
  for (int k = 0; k < 20; ++k) {
    const std::complex<double> z{urand(gen, -2.0, 2.0), urand(gen, -2.0, 2.0)};
    const double t = urand(gen, 0.0, 2.0 * prm.period());
    const PhaseSpacePoint pt{urand(gen, -3.0, 3.0), urand(gen, -3.0, 3.0)};
    const double c = std::cos(prm.omega * t), s = std::sin(prm.omega * t);
    const PhaseSpacePoint rotated{pt.X * c - pt.P / (prm.mass * prm.omega) * s,
                                  pt.P * c + prm.mass * prm.omega * pt.X * s};
    const double lhs = wigner_coherent(prm, coherent_evolve(z, t, prm.omega), pt);
    const double rhs = wigner_coherent(prm, z, rotated);
    CHECK(std::abs(lhs - rhs) < 1e-12 / (std::numbers::pi * prm.hbar));
  }
}

TEST_CASE("W_n has exactly n radial sign changes along P = 0") {
  OscillatorParams prm;
  for (int n : {2, 9, 17, 60}) {
    // zeros of L_n(2 xi) resolved by a theta-graded radial grid
    const int M = 40 * n + 40;
    int changes = 0;
    double prev = wigner_eigen_exact(prm, n, {1e-9, 0.0});
    for (int j = 1; j <= M; ++j) {
      const double s = std::sin(0.5 * std::numbers::pi * j / M);
      const double xi = s * s * (2.0 * n + 4.0 + 2.0 * std::sqrt(2.0 * n + 1.0));
      const double w = wigner_eigen_exact(prm, n, {std::sqrt(xi), 0.0});
      if ((w > 0 && prev < 0) || (w < 0 && prev > 0)) ++changes;
      if (w != 0.0) prev = w;
    }
    CHECK(changes == n);
  }
}

TEST_CASE("n=2 exact field shows the two-ring oscillation of its heatmap") {
  OscillatorParams prm;
  // radial profile of W_2: central extremum plus 2 sign changes
  const double w0 = wigner_eigen_exact(prm, 2, {0.0, 0.0});
  CHECK(w0 == 1.0 / std::numbers::pi);
  int changes = 0;
  double prev = w0;
  for (double x = 0.05; x < 5.0; x += 0.01) {
    const double w = wigner_eigen_exact(prm, 2, {x, 0.0});
    if ((w > 0 && prev < 0) || (w < 0 && prev > 0)) ++changes;
    prev = w;
  }
  CHECK(changes == 2);
}

TEST_CASE("scaled-energy form anchors and consistency with the xi form") {
  OscillatorParams prm;
  for (int n : {1, 4, 9, 60}) {
    const double expect = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(wigner_scaled_energy(n, 0.0) == expect);
  }
  // r = 0.5 at n = 60 corresponds to xi = 2 n r = 60, e.g. X = a sqrt(60), P = 0
  const double curve = wigner_scaled_energy(60, 0.5);
  const double field = std::numbers::pi * prm.hbar *
                       wigner_eigen_exact(prm, 60, {std::sqrt(60.0), 0.0});
  CHECK(std::abs(curve - field) < 1e-10);
  CHECK_THROWS_AS(wigner_scaled_energy(0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(wigner_scaled_energy(3, -0.1), std::invalid_argument);
}

TEST_CASE("scaled-energy curve oscillation count and near-shell peak growth") {
  // n = 130: 130 sign changes on r in (0, 1)
  {
    const int n = 130;
    const int M = 40 * n;
    int changes = 0;
    double prev = wigner_scaled_energy(n, 1e-12);
    for (int j = 1; j <= M; ++j) {
      const double s = std::sin(0.5 * std::numbers::pi * j / M);
      const double r = s * s * (4.0 * n + 2.0) / (4.0 * n);
      if (r >= 1.0) break;
      const double w = wigner_scaled_energy(n, r);
      if ((w > 0 && prev < 0) || (w < 0 && prev > 0)) ++changes;
      if (w != 0.0) prev = w;
    }
    CHECK(changes == 130);
  }
  // the extremum just below r = 1 grows relative to the interior oscillation
  auto shape = [](int n) {
    const auto c = scaled_energy_curve(n, 1.5, 4001);
    double near_shell = 0.0, interior = 0.0;
    for (std::size_t i = 0; i < c.r.size(); ++i) {
      if (c.r[i] >= 0.7 && c.r[i] <= 1.2) near_shell = std::max(near_shell, std::abs(c.w[i]));
      if (c.r[i] >= 0.15 && c.r[i] <= 0.6) interior = std::max(interior, std::abs(c.w[i]));
    }
    return near_shell / interior;
  };
  const double g9 = shape(9), g60 = shape(60), g130 = shape(130);
  CHECK(g9 > 1.0);
  CHECK(g60 > g9);
  CHECK(g130 > g60);
}

TEST_CASE("marginals reproduce |psi|^2 in both representations") {
  OscillatorParams prm;
  std::mt19937_64 gen(18);
  for (int n : {0, 3, 12}) {
    const auto st = QuantumState::eigenstate(n);
    const double xm = std::sqrt(2.0 * n + 1.0) + 2.0;
    for (int k = 0; k < 10; ++k) {
      const double X = urand(gen, -xm, xm);
      const double d = psi_eigen(prm, n, X);
      CHECK(std::abs(marginal_position(prm, st, X) - d * d) < 1e-8);
      const double P = urand(gen, -xm, xm);
      const double dm = std::norm(momentum_wavefunction(prm, st, P));
      CHECK(std::abs(marginal_momentum(prm, st, P) - dm) < 1e-8);
      // oscillator special case: momentum density is the position density
      // under x <-> P a^2/hbar
      const double rescaled = psi_eigen(prm, n, P * prm.length_scale() *
                                                    prm.length_scale() / prm.hbar);
      CHECK(std::abs(marginal_momentum(prm, st, P) -
                     rescaled * rescaled * prm.length_scale() * prm.length_scale() /
                         prm.hbar) < 1e-8);
    }
  }
}

TEST_CASE("coherent position marginal is a Gaussian of variance a^2/2 at X0") {
  OscillatorParams prm;
  const double a = prm.length_scale();
  const auto st = QuantumState::coherent(2.0);
  const double x0 = 2.0 * std::numbers::sqrt2 * a;
  for (double dx : {-1.5, -0.4, 0.0, 0.7, 2.0}) {
    const double X = x0 + dx * a;
    const double expect = std::exp(-dx * dx) / (a * std::sqrt(std::numbers::pi));
    CHECK(std::abs(marginal_position(prm, st, X) - expect) < 1e-8);
  }
}

TEST_CASE("marginal support truncation is flagged for narrow integration windows") {
  OscillatorParams prm;
  const auto st = QuantumState::eigenstate(8);
  bool truncated = true;
  marginal_position(prm, st, 0.3, &truncated);
  CHECK_FALSE(truncated);  // the auto window covers the support
}

TEST_CASE("weyl_moment anchors: second moments, odd moments, coherent means") {
  OscillatorParams prm;
  const auto st = QuantumState::eigenstate(12);
  // <X^2> = a^2 (n + 1/2), cross-checked against the 1-D wavefunction integral
  const double m20 = weyl_moment(prm, st, 2, 0);
  CHECK(std::abs(m20 - 12.5) / 12.5 < 1e-6);
  auto x2psi2 = [&](double x) {
    const double v = psi_eigen(prm, 12, x);
    return x * x * v * v;
  };
  const double oracle = integrate_oscillatory(x2psi2, -14.0, 14.0, 10.0, 1e-11);
  CHECK(std::abs(m20 - oracle) / oracle < 1e-6);
  // <XP> vanishes for eigenstates
  CHECK(std::abs(weyl_moment(prm, st, 1, 1)) < 1e-10);
  // coherent <X> = X0
  const auto stz = QuantumState::coherent({1.3, 0.8});
  CHECK(weyl_moment(prm, stz, 1, 0) ==
        doctest::Approx(1.3 * std::numbers::sqrt2).epsilon(1e-8));
  CHECK_THROWS_AS(weyl_moment(prm, st, 3, 2), std::invalid_argument);
}

TEST_CASE("symmetric-ordered <xp+px> agrees with the wavefunction matrix element") {
  OscillatorParams prm;
  const std::complex<double> z{1.3, 0.8};
  const auto st = QuantumState::coherent(z);
  const double via_moments = 2.0 * weyl_moment(prm, st, 1, 1);
  auto integrand = [&](double x) {
    const std::complex<double> p = psi_coherent(prm, z, x);
    const std::complex<double> dp = p * (-x + std::numbers::sqrt2 * z);
    return std::conj(p) * (2.0 * x * dp + p);
  };
  const std::complex<double> raw =
      integrate_oscillatory(integrand, -14.0, 16.0, 4.0, 1e-13);
  const double direct = (std::complex<double>{0.0, -1.0} * raw).real();
  CHECK(std::abs(via_moments - direct) < 1e-8);
}

TEST_CASE("wigner_averaged: window of one, normalization, window bounds") {
  OscillatorParams prm;
  const PhaseSpacePoint pt{1.2, -0.7};
  CHECK(wigner_averaged(prm, 9, 0, pt) == wigner_eigen_exact(prm, 9, pt));
  CHECK_THROWS_AS(wigner_averaged(prm, 3, 5, pt), std::invalid_argument);

  WignerField f;
  const double ex = std::sqrt(2.0 * 70.0 + 1.0) + 8.0;
  f.grid = PhaseGrid(-ex, ex, -ex, ex, 901, 901);
  fill_field(f, [&](double x, double p) {
    return wigner_averaged(prm, 60, 10, {x, p});
  });
  CHECK(std::abs(field_integral(f) - 1.0) < 1e-6);
}

TEST_CASE("averaged scaled-energy curve is damped with a dominant near-shell peak") {
  const auto avg = scaled_energy_curve(60, 1.5, 4001, 10);
  double peak = 0.0, peak_r = 0.0, interior = 0.0;
  for (std::size_t i = 0; i < avg.r.size(); ++i) {
    if (avg.r[i] < 0.1) continue;  // skip the parity remnant at r = 0
    if (std::abs(avg.w[i]) > peak) {
      peak = std::abs(avg.w[i]);
      peak_r = avg.r[i];
    }
    if (avg.r[i] >= 0.15 && avg.r[i] <= 0.6)
      interior = std::max(interior, std::abs(avg.w[i]));
  }
  CHECK(peak_r > 0.85);
  CHECK(peak_r < 1.2);
  CHECK(interior < 0.25 * peak);
}

TEST_CASE("k_function diagonal identity and ground-state reduction") {
  OscillatorParams prm(1.0, 1.0, 0.8);
  std::mt19937_64 gen(19);
  for (int k = 0; k < 15; ++k) {
    const std::complex<double> z{urand(gen, -2.5, 2.5), urand(gen, -2.5, 2.5)};
    const PhaseSpacePoint pt{urand(gen, -3.0, 3.0), urand(gen, -3.0, 3.0)};
    const std::complex<double> kv = k_function(prm, z, z, pt);
    CHECK(std::abs(kv.real() - wigner_coherent(prm, z, pt)) <
          1e-12 / (std::numbers::pi * prm.hbar));
    CHECK(std::abs(kv.imag()) < 1e-12 / (std::numbers::pi * prm.hbar));
  }
  const PhaseSpacePoint pt{0.4, -0.9};
  CHECK(std::abs(k_function(prm, 0.0, 0.0, pt).real() - wigner_ground(prm, pt)) <
        1e-14);
}

TEST_CASE("Cauchy coefficient extraction recovers W_n from the kernel") {
  OscillatorParams prm;
  for (int n = 0; n <= 6; ++n) {
    for (PhaseSpacePoint pt : {PhaseSpacePoint{0.3, 0.2}, {1.1, -0.6}, {0.0, 0.0},
                               {-0.8, 1.4}}) {
      const double exact = wigner_eigen_exact(prm, n, pt);
      if (std::abs(exact) * std::numbers::pi < 1e-3) continue;
      const double extracted = wigner_eigen_from_k(prm, n, pt);
      CHECK(std::abs(extracted - exact) / std::abs(exact) < 1e-7);
    }
  }
}

TEST_CASE("field fills are deterministic and flag truncated supports") {
  OscillatorParams prm;
  const auto st = QuantumState::eigenstate(33);
  WignerField f1, f2;
  f1.grid = auto_grid(prm, st, 513, 513);
  f2.grid = f1.grid;
  auto fn = [&](double x, double p) { return wigner_eigen_exact(prm, 33, {x, p}); };
  fill_field(f1, fn);
  fill_field(f2, fn);
  CHECK((f1.values == f2.values).all());
  CHECK(f1.all_finite());
  CHECK(std::abs(field_integral(f1) - 1.0) < 1e-6);
  CHECK_FALSE(field_support_truncated(f1));

  WignerField narrow;
  narrow.grid = PhaseGrid(-2.0, 2.0, -2.0, 2.0, 65, 65);
  fill_field(narrow, fn);
  CHECK(field_support_truncated(narrow));
}

TEST_CASE("auto_grid covers the support symmetrically") {
  OscillatorParams prm(1.0, 1.0, 0.25);
  const auto g = auto_grid(prm, QuantumState::eigenstate(12), 301, 301);
  CHECK(g.nx == 301);
  CHECK(g.x_max == -g.x_min);
  CHECK(g.p_max == -g.p_min);
  CHECK(g.x_max == doctest::Approx(prm.length_scale() * (std::sqrt(25.0) + 8.0)));
}

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscwig/classical.hpp"
#include "oscwig/quadrature.hpp"
#include "oscwig/special_functions.hpp"
#include "oscwig/wigner.hpp"

using namespace oscwig;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
}

double smeared_expectation(const OscillatorParams& prm, double E, double sigma_e,
                           const TestFunctional& f) {
  const double R = std::sqrt(2.0 * E) + 10.0 * sigma_e + 2.0;
  const int N = 1601;
  double acc = 0.0;
  const double h = 2.0 * R / (N - 1.0);
  for (int i = 0; i < N; ++i) {
    const double x = -R + i * h;
    const double wi = (i == 0 || i == N - 1) ? 0.5 : 1.0;
    for (int j = 0; j < N; ++j) {
      const double p = -R + j * h;
      const double wj = (j == 0 || j == N - 1) ? 0.5 : 1.0;
      acc += wi * wj * classical_density_smeared(prm, E, {x, p}, sigma_e) * f(x, p);
    }
  }
  return acc * h * h;
}

}  // namespace

TEST_CASE("action-angle map anchors and energy identity") {
  OscillatorParams prm(1.0, 1.0, 1.0);
  const double I = 3.7;
  const auto at0 = action_angle_to_cartesian(prm, I, 0.0);
  CHECK(at0.X == doctest::Approx(std::sqrt(2.0 * I)).epsilon(1e-15));
  CHECK(at0.P == doctest::Approx(0.0).scale(std::sqrt(2.0 * I)).epsilon(1e-15));
  const auto at90 = action_angle_to_cartesian(prm, I, 0.5 * std::numbers::pi);
  CHECK(at90.X == doctest::Approx(0.0).scale(std::sqrt(2.0 * I)).epsilon(1e-14));
  CHECK(at90.P == doctest::Approx(-std::sqrt(2.0 * I)).epsilon(1e-14));

  std::mt19937_64 gen(31);
  for (int k = 0; k < 20; ++k) {
    const double Ik = urand(gen, 0.01, 20.0);
    const double phi = urand(gen, 0.0, 2.0 * std::numbers::pi);
    const auto pt = action_angle_to_cartesian(prm, Ik, phi);
    const double e = pt.P * pt.P / 2.0 + pt.X * pt.X / 2.0;
    CHECK(std::abs(e - Ik * prm.omega) / (Ik * prm.omega) < 1e-13);
    // round trip
    CHECK(std::abs(action_of_point(prm, pt) - Ik) / Ik < 1e-13);
  }
}

TEST_CASE("action_of_point anchors") {
  OscillatorParams prm(2.0, 3.0, 1.0);
  CHECK(action_of_point(prm, {0.0, 0.0}) == 0.0);
  const double E = 7.0;
  const double x_turn = std::sqrt(2.0 * E / (prm.mass * prm.omega * prm.omega));
  CHECK(action_of_point(prm, {x_turn, 0.0}) == doctest::Approx(E / prm.omega).epsilon(1e-14));
}

TEST_CASE("classical_expectation anchors: wide probe, X^2 moment, shell ordering") {
  OscillatorParams prm;
  const double E = 10.0;
  const double rx = std::sqrt(2.0 * E);
  // a probe much wider than the orbit integrates to ~1
  TestFunctional wide{"w", 0.0, 0.0, 30.0 * rx, 30.0 * rx};
  CHECK(classical_expectation(prm, E, wide) == doctest::Approx(1.0).epsilon(1e-3));
  // <x^2> = E/(m omega^2) through the generic-observable overload
  const double x2 = classical_expectation(
      prm, E, std::function<double(PhaseSpacePoint)>(
                  [](PhaseSpacePoint pt) { return pt.X * pt.X; }));
  CHECK(x2 == doctest::Approx(E).epsilon(1e-12));
  // an on-shell bump sees more weight than the same bump at the origin
  TestFunctional on{"on", rx, 0.0, 0.3 * rx, 0.3 * rx};
  TestFunctional origin{"o", 0.0, 0.0, 0.3 * rx, 0.3 * rx};
  CHECK(classical_expectation(prm, E, on) > classical_expectation(prm, E, origin));
}

TEST_CASE("classical expectations are hbar independent") {
  OscillatorParams a(1.0, 1.0, 1.0);
  OscillatorParams b(1.0, 1.0, 1e-3);
  const auto bank = default_functional_bank(1.0, 1.0, 10.0);
  for (const auto& f : bank) {
    const double va = classical_expectation(a, 10.0, f);
    const double vb = classical_expectation(b, 10.0, f);
    CHECK(va == vb);  // the angle average never touches hbar
  }
}

TEST_CASE("classical_density_smeared integrates to one and has the stated peak") {
  OscillatorParams prm;
  const double E = 10.0;
  TestFunctional unit{"1", 0.0, 0.0, 1e6, 1e6};
  for (double sigma_e : {0.5, 1.0, 2.0}) {
    CHECK(smeared_expectation(prm, E, sigma_e, unit) == doctest::Approx(1.0).epsilon(1e-6));
  }
  const double sigma_e = 0.8;
  const double x_shell = std::sqrt(2.0 * E);
  const double peak = classical_density_smeared(prm, E, {x_shell, 0.0}, sigma_e);
  CHECK(peak == doctest::Approx(1.0 / (prm.period() * std::sqrt(2.0 * std::numbers::pi) *
                                       sigma_e)).epsilon(1e-10));
  // three sigma out in energy
  const double e3 = E + 3.0 * sigma_e;
  const double x3 = std::sqrt(2.0 * e3);
  CHECK(classical_density_smeared(prm, E, {x3, 0.0}, sigma_e) ==
        doctest::Approx(peak * std::exp(-4.5)).epsilon(1e-9));
  CHECK_THROWS_AS(classical_density_smeared(prm, E, {0.0, 0.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("smeared-density expectations converge to the angle average") {
  OscillatorParams prm;
  const double E = 10.0;
  const auto bank = default_functional_bank(1.0, 1.0, E);
  const auto& f = bank[0];
  const double exact = classical_expectation(prm, E, f);
  const double i2 = smeared_expectation(prm, E, 0.2, f);
  const double i3 = smeared_expectation(prm, E, 0.1, f);
  const double richardson = (4.0 * i3 - i2) / 3.0;  // O(sigma^2) leading error
  CHECK(std::abs(richardson - exact) < 1e-4);
}

TEST_CASE("quantum_expectation anchors: normalization probe and remote probe") {
  OscillatorParams prm;
  const auto ground = QuantumState::eigenstate(0);
  TestFunctional wide{"w", 0.0, 0.0, 10.0, 10.0};
  CHECK(quantum_expectation(prm, ground, wide) == doctest::Approx(1.0).epsilon(0.02));
  TestFunctional far{"f", 40.0, 0.0, 1.0, 1.0};  // 40 sigma from the support
  CHECK(std::abs(quantum_expectation(prm, ground, far)) < 1e-8);
}

TEST_CASE("radial functionals reduce to a 1-D integral of the scaled-energy curve") {
  OscillatorParams prm;
  const int n = 17;
  const double s = 2.0;  // f = exp(-xi/(2 s^2)) when the widths follow (a, hbar/a)
  TestFunctional f{"radial", 0.0, 0.0, s * prm.length_scale(), s * prm.momentum_scale()};
  const double q2d = quantum_expectation(prm, QuantumState::eigenstate(n), f);
  auto g = [&](double xi) {
    return ((n % 2 == 0) ? 1.0 : -1.0) * laguerre_scaled(n, 2.0 * xi) *
           std::exp(-0.5 * xi / (s * s));
  };
  const double hi = std::pow(std::sqrt(2.0 * n + 1.0) + 9.0, 2.0);
  const double q1d = adaptive_simpson(g, 0.0, hi, 1e-12);
  CHECK(std::abs(q2d - q1d) < 1e-5);
  // same number by the Laplace transform of the Laguerre polynomial
  const double q = 0.5 * (1.0 + 1.0 / (2.0 * s * s));
  const double analytic = ((n % 2 == 0) ? 1.0 : -1.0) * 0.5 *
                          std::pow(q - 1.0, n) / std::pow(q, n + 1.0);
  CHECK(q1d == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("convergence_sweep rows satisfy n hbar omega = E_clas and are ordered") {
  const auto bank = default_functional_bank(1.0, 1.0, 10.0);
  SweepOptions so;
  so.window = 2;
  const auto rep = convergence_sweep(1.0, 1.0, 10.0, {5, 9}, bank, so);
  CHECK(rep.e_clas == 10.0);
  CHECK(rep.rows.size() == 4 * bank.size());
  int prev_n = 0, prev_window = -1;
  std::size_t idx = 0;
  for (const auto& row : rep.rows) {
    CHECK(std::abs(row.hbar * row.n * 1.0 - 10.0) / 10.0 < 1e-14);
    CHECK(row.abs_err == std::abs(row.quantum - row.classical));
    CHECK(row.n >= prev_n);
    if (row.n > prev_n) prev_window = -1;
    CHECK(row.window >= prev_window);
    prev_n = row.n;
    prev_window = row.window;
    CHECK(row.functional_id == bank[idx % bank.size()].id);
    ++idx;
  }
  CHECK_THROWS_AS(convergence_sweep(1.0, 1.0, 10.0, {9, 5}, bank, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(1.0, 1.0, -1.0, {5}, bank, {}),
                  std::invalid_argument);
}

TEST_CASE("quantum-classical error shrinks with n at fixed E_clas") {
  const auto bank = default_functional_bank(1.0, 1.0, 10.0);
  const auto rep = convergence_sweep(1.0, 1.0, 10.0, {9, 27}, bank, {});
  for (std::size_t q = 0; q < bank.size(); ++q) {
    const auto& coarse = rep.rows[q];
    const auto& fine = rep.rows[bank.size() + q];
    CHECK(fine.abs_err < coarse.abs_err);
  }
}

TEST_CASE("default functional bank covers inside, on and outside the shell") {
  const auto bank = default_functional_bank(1.0, 1.0, 10.0);
  REQUIRE(bank.size() == 5);
  const double rx = std::sqrt(20.0);
  CHECK(bank[0].id == "onshell_x");
  CHECK(bank[0].center_x == doctest::Approx(rx));
  CHECK(bank[1].id == "onshell_p");
  CHECK(bank[1].center_p == doctest::Approx(-std::sqrt(20.0)));
  CHECK(bank[2].id == "origin");
  CHECK(bank[3].id == "offshell_1p5");
  CHECK(bank[3].center_x == doctest::Approx(1.5 * rx));
  CHECK(bank[4].id == "wide");
  CHECK(bank[4].sigma_x == doctest::Approx(3.0 * rx));
}

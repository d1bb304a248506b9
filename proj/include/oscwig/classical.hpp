#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oscwig/oscillator.hpp"
#include "oscwig/phase_space.hpp"

namespace oscwig {

/// Action-angle coordinates: E = I omega, x = sqrt(2I/m omega) cos(phi),
/// p = -m omega sqrt(2I/m omega) sin(phi).
struct ActionAngle {
  double action = 0.0;  // I >= 0
  double angle = 0.0;   // radians
};

/// Smooth Gaussian test function on phase space,
/// f(X,P) = exp(-(X-Xc)^2/2 sx^2 - (P-Pc)^2/2 sp^2), amplitude 1.
struct TestFunctional {
  std::string id;
  double center_x = 0.0;
  double center_p = 0.0;
  double sigma_x = 1.0;
  double sigma_p = 1.0;

  void validate() const {
    if (!(sigma_x > 0.0) || !(sigma_p > 0.0))
      throw std::invalid_argument("TestFunctional: widths must be positive");
  }
  double operator()(double X, double P) const {
    const double dx = (X - center_x) / sigma_x;
    const double dp = (P - center_p) / sigma_p;
    return std::exp(-0.5 * dx * dx - 0.5 * dp * dp);
  }
};

struct ConvergenceRow {
  int n = 0;
  double hbar = 0.0;  // E_clas / (n omega)
  std::string functional_id;
  int window = 0;  // 0 = single eigenstate, N_W > 0 = averaged
  double quantum = 0.0;
  double classical = 0.0;
  double abs_err = 0.0;
  bool support_truncated = false;
};

struct ConvergenceReport {
  double e_clas = 0.0;
  std::vector<ConvergenceRow> rows;
};

PhaseSpacePoint action_angle_to_cartesian(const OscillatorParams& params, double I,
                                          double phi);

/// I(X, P) = E(X, P)/omega.
double action_of_point(const OscillatorParams& params, PhaseSpacePoint pt);

/// Microcanonical angle average (1/2pi) Int f(x(I,phi), p(I,phi)) dphi at
/// I = E/omega, by periodic trapezoid with node doubling until successive
/// estimates differ by less than 1e-12.
double classical_expectation(const OscillatorParams& params, double E,
                             const TestFunctional& f);

/// Same average for an arbitrary phase-space observable.
double classical_expectation(const OscillatorParams& params, double E,
                             const std::function<double(PhaseSpacePoint)>& f);

/// Mollified microcanonical density (1/T) N_sigma(E(X,P) - E); integrates to 1
/// over phase space for any sigma_E << E.
double classical_density_smeared(const OscillatorParams& params, double E,
                                 PhaseSpacePoint pt, double sigma_E);

/// Trapezoid Int Int W f dX dP for an eigenstate (window = 0) or an averaged
/// window of eigenstates, on a grid sized to cover both supports.
double quantum_expectation(const OscillatorParams& params, const QuantumState& state,
                           const TestFunctional& f, int window = 0,
                           bool* support_truncated = nullptr);

struct SweepOptions {
  int window = 0;              // when > 0, adds averaged rows alongside single-state rows
  double points_per_fringe = 6.0;
  double padding_a = 8.0;
};

/// For each n sets hbar = E_clas/(n omega), compares quantum and classical
/// expectations for every functional. Rows are ordered by (n, window,
/// functional index); each row satisfies hbar * n * omega = E_clas.
ConvergenceReport convergence_sweep(double mass, double omega, double e_clas,
                                    const std::vector<int>& n_list,
                                    const std::vector<TestFunctional>& functionals,
                                    const SweepOptions& options = {});

/// The five standard probes: on-shell bumps at angle 0 and pi/2, an
/// origin-centered bump, an off-shell bump at 1.5 orbit radii, and a wide
/// normalization probe.
std::vector<TestFunctional> default_functional_bank(double mass, double omega,
                                                    double e_clas);

}  // namespace oscwig

#pragma once

#include <complex>
#include <vector>

#include "oscwig/oscillator.hpp"
#include "oscwig/phase_space.hpp"

namespace oscwig {

struct WignerQuadratureOptions {
  /// Absolute tolerance in units of 1/(pi hbar).
  double abs_tol_factor = 1e-12;
  int max_depth = 40;
};

/// Defining-integral evaluation
///   W(X,P) = (1/2 pi hbar) Int ds psi*(X-s/2) e^{-i P s/hbar} psi(X+s/2),
/// adaptive over s with the range truncated where the wavefunction envelope is
/// negligible. Throws NonConvergence if refinement cannot reach the target.
double wigner_quadrature(const OscillatorParams& params, const QuantumState& state,
                         PhaseSpacePoint pt,
                         const WignerQuadratureOptions& options = {});

/// Ground-state Gaussian, (1/pi hbar) e^{-X^2/a^2} e^{-P^2 a^2/hbar^2}.
double wigner_ground(const OscillatorParams& params, PhaseSpacePoint pt);

/// Displaced Gaussian centered at X0 = sqrt(2) a Re z, P0 = sqrt(2) (hbar/a) Im z.
double wigner_coherent(const OscillatorParams& params, std::complex<double> z,
                       PhaseSpacePoint pt);

/// Laguerre closed form, (-1)^n/(pi hbar) e^{-xi} L_n(2 xi) with
/// xi = (X/a)^2 + (P a/hbar)^2.
double wigner_eigen_exact(const OscillatorParams& params, int n, PhaseSpacePoint pt);

/// Dimensionless pi hbar W_n as a function of r = E(X,P)/E_clas with
/// E_clas = n hbar omega: (-1)^n e^{-2 n r} L_n(4 n r). Requires n >= 1.
double wigner_scaled_energy(int n, double r);

/// Uniform mean of W_m over the inclusive window m in [n - half_width, n + half_width].
double wigner_averaged(const OscillatorParams& params, int n, int half_width,
                       PhaseSpacePoint pt);

/// Window mean of the scaled-energy form at fixed r (abscissa set by the
/// center level n).
double wigner_averaged_scaled_energy(int n, int half_width, double r);

/// Closed-form generating kernel K(z1, z2, X, P); K(z, z, ., .) equals the
/// coherent-state Wigner function exactly.
std::complex<double> k_function(const OscillatorParams& params,
                                std::complex<double> z1, std::complex<double> z2,
                                PhaseSpacePoint pt);

/// Recovers W_n from the (n, n) Taylor coefficient of the generating kernel by
/// Cauchy circle quadrature with 4n+8 nodes per circle.
double wigner_eigen_from_k(const OscillatorParams& params, int n, PhaseSpacePoint pt,
                           double radius = 0.8);

/// Pointwise Wigner value by the best available route: closed forms for
/// eigenstates and coherent states, defining-integral quadrature otherwise.
double wigner_point(const OscillatorParams& params, const QuantumState& state,
                    PhaseSpacePoint pt);

/// Int dP W(X, P) on a refined line; equals |psi(X)|^2.
double marginal_position(const OscillatorParams& params, const QuantumState& state,
                         double X, bool* support_truncated = nullptr);

/// Int dX W(X, P) on a refined line; equals |psi~(P)|^2.
double marginal_momentum(const OscillatorParams& params, const QuantumState& state,
                         double P, bool* support_truncated = nullptr);

/// Momentum-space wavefunction psi~(P) = (2 pi hbar)^{-1/2} Int psi(x) e^{-iPx/hbar} dx
/// by direct quadrature (oracle for marginal_momentum).
std::complex<double> momentum_wavefunction(const OscillatorParams& params,
                                           const QuantumState& state, double P);

/// Int Int X^k P^l W dX dP on an auto-sized grid. Requires k + l <= 4; the
/// (1,1) case times 2 is the symmetric-ordered <xp + px>.
double weyl_moment(const OscillatorParams& params, const QuantumState& state, int k,
                   int l, bool* support_truncated = nullptr);

/// Samples of (E/E_clas, pi hbar W) along a phase-space ray.
struct ScaledEnergyCurve {
  int n = 1;
  std::vector<double> r;  // non-negative, strictly increasing
  std::vector<double> w;  // pi hbar W at each r
};

ScaledEnergyCurve scaled_energy_curve(int n, double r_max, int samples,
                                      int window = 0);

/// Grid sized to cover the state's support plus padding_a length scales,
/// symmetric in X and P.
PhaseGrid auto_grid(const OscillatorParams& params, const QuantumState& state,
                    int nx = 501, int np = 501, double padding_a = 8.0);

}  // namespace oscwig

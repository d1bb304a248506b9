#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oscwig {

/// Physical parameters of the oscillator. Units are retained (nothing is
/// hard-fixed to 1); every derived scale comes from these three numbers.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  OscillatorParams() = default;
  OscillatorParams(double m, double w, double hb) : mass(m), omega(w), hbar(hb) {
    validate();
  }

  void validate() const {
    if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0) ||
        !std::isfinite(mass) || !std::isfinite(omega) || !std::isfinite(hbar)) {
      throw std::invalid_argument(
          "OscillatorParams: mass, omega and hbar must be positive and finite");
    }
  }

  /// Characteristic length a = sqrt(hbar / (m omega)).
  double length_scale() const { return std::sqrt(hbar / (mass * omega)); }
  /// Characteristic momentum hbar / a.
  double momentum_scale() const { return hbar / length_scale(); }
  /// Period of motion T = 2 pi / omega.
  double period() const { return 2.0 * std::numbers::pi / omega; }
  /// E_n = hbar omega (n + 1/2).
  double level_energy(int n) const { return hbar * omega * (n + 0.5); }
};

struct PhaseSpacePoint {
  double X = 0.0;
  double P = 0.0;
};

struct Eigenstate {
  int n = 0;
};

struct CoherentState {
  std::complex<double> z;
};

struct Superposition {
  std::vector<std::pair<int, std::complex<double>>> terms;  // (n, amplitude), sorted by n
};

/// Tagged description of a pure state: energy eigenstate, coherent state, or
/// a finite superposition of eigenstates with unit total weight.
class QuantumState {
 public:
  static QuantumState eigenstate(int n);
  static QuantumState coherent(std::complex<double> z);
  /// Amplitudes must satisfy sum |c_n|^2 = 1 within 1e-12.
  static QuantumState superposition(std::vector<std::pair<int, std::complex<double>>> terms);

  const std::variant<Eigenstate, CoherentState, Superposition>& value() const {
    return state_;
  }
  const Eigenstate* as_eigenstate() const { return std::get_if<Eigenstate>(&state_); }
  const CoherentState* as_coherent() const { return std::get_if<CoherentState>(&state_); }
  const Superposition* as_superposition() const { return std::get_if<Superposition>(&state_); }

  double mean_energy(const OscillatorParams& params) const;
  /// Largest level carrying non-negligible weight (used for support sizing).
  int max_level() const;
  std::string describe() const;

 private:
  template <class T>
  explicit QuantumState(T&& s) : state_(std::forward<T>(s)) {}

  std::variant<Eigenstate, CoherentState, Superposition> state_;
};

/// psi_n(x) = a^{-1/2} h_n(x/a); real, unit L2 norm.
double psi_eigen(const OscillatorParams& params, int n, double x);

/// Closed-form coherent-state wavefunction. Rejects |z| > 30, beyond which the
/// defining eigenstate series can no longer validate the value in binary64.
std::complex<double> psi_coherent(const OscillatorParams& params,
                                  std::complex<double> z, double x);

/// z(t) = z e^{-i omega t}.
std::complex<double> coherent_evolve(std::complex<double> z, double t, double omega);

/// Wavefunction of any supported state at x.
std::complex<double> psi(const OscillatorParams& params, const QuantumState& state,
                         double x);

/// Radius beyond which |psi| is negligible (< ~1e-15 of its peak).
double support_radius_x(const OscillatorParams& params, const QuantumState& state);
/// Same bound for the momentum-space wavefunction.
double support_radius_p(const OscillatorParams& params, const QuantumState& state);

}  // namespace oscwig

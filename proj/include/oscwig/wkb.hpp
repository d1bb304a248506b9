#pragma once

#include "oscwig/oscillator.hpp"

namespace oscwig {

/// Semiclassical context for level n: energy, turning points, normalization
/// amplitude A = sqrt(4m/T) and the turning-point phase. Immutable after
/// construction and shareable across threads.
struct WkbContext {
  OscillatorParams params;
  int n = 0;
  double energy = 0.0;        // hbar omega (n + 1/2)
  double x_turn = 0.0;        // sqrt(2E/(m omega^2)); allowed region is |x| < x_turn
  double amplitude = 0.0;     // sqrt(4m/T)
  double maslov_phase = 0.0;  // radians added inside the sine (index 1/2 -> pi/4)
  double guard = 0.02;        // fraction of x_turn excluded around each turning point

  static WkbContext for_level(const OscillatorParams& params, int n,
                              double guard = 0.02);
};

/// p(x) = sqrt(2m(E - m omega^2 x^2 / 2)) >= 0. Throws OutsideAllowedRegion
/// for |x| > x_turn.
double local_momentum(const WkbContext& ctx, double x);

/// Closed-form classical action S(x) = (E/omega)(phi + sin(2 phi)/2 + pi/2)
/// with phi = arcsin(x/x_turn); S(-x_turn) = 0, S(x_turn) = pi E / omega.
double action(const WkbContext& ctx, double x);

/// A/sqrt(p) sin(S/hbar + mu). Throws TurningPointRegion inside the guard band.
double psi_wkb(const WkbContext& ctx, double x);

/// Semiclassical Wigner function by direct quadrature of the defining integral
/// over the classically allowed s-range, with a cosine taper over the outer 5%
/// of the range to suppress the turning-point divergence.
double wigner_wkb_numeric(const WkbContext& ctx, PhaseSpacePoint pt);

/// Piecewise closed form of the semiclassical Wigner function, with every
/// sin(k u)/k factor evaluated as u sinc(k u) so the removable singularities at
/// P = +-p(X) and P = 0 stay smooth. X < 0 uses the (X, P) -> (-X, -P) mirror.
double wigner_wkb_closed(const WkbContext& ctx, PhaseSpacePoint pt);

/// The rapidly oscillating cos(2S/hbar) interference term of the closed form,
/// isolated for smoothing diagnostics.
double wigner_wkb_cross_term(const WkbContext& ctx, PhaseSpacePoint pt);

/// Gaussian smoothing of the closed form along X at fixed P (discrete
/// convolution, +-3 sigma support). Requires sigma_x at or above the local
/// interference fringe wavelength; throws SmoothingTooNarrow otherwise.
double wigner_wkb_smoothed(const WkbContext& ctx, PhaseSpacePoint pt, double sigma_x);

/// Same smoothing applied to the isolated interference term.
double wigner_wkb_smoothed_cross(const WkbContext& ctx, PhaseSpacePoint pt,
                                 double sigma_x);

}  // namespace oscwig

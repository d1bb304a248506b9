#pragma once

#include <stdexcept>

namespace oscwig {

/// Adaptive quadrature could not reach its error target within the depth limit.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Position outside the classically allowed region of the requested energy.
struct OutsideAllowedRegion : std::domain_error {
  using std::domain_error::domain_error;
};

/// Position inside the guard band around a turning point, where the
/// semiclassical wavefunction is not usable.
struct TurningPointRegion : std::domain_error {
  using std::domain_error::domain_error;
};

/// Smoothing width below the local oscillation wavelength it must average over.
struct SmoothingTooNarrow : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace oscwig

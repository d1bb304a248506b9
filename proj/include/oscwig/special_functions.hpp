#pragma once

namespace oscwig {

/// Normalized Hermite function h_n(u) = H_n(u) e^{-u^2/2} / sqrt(2^n n! sqrt(pi)).
///
/// Evaluated through the scaled three-term recurrence
///   h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1},
/// whose iterates stay below ~0.76 in magnitude for all real u, so the value
/// never overflows regardless of n.
double hermite_function(int n, double u);

/// e^{-x/2} L_n(x) for x >= 0 as one scaled quantity.
///
/// The exponential damping is carried through the recurrence start values, so
/// intermediates remain bounded by 1 wherever e^{-x/2} is representable; far
/// beyond that the bare recurrence runs with binary rescaling instead.
double laguerre_scaled(int n, double x);

}  // namespace oscwig

#include "oscwig/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscwig/errors.hpp"
#include "oscwig/quadrature.hpp"

namespace oscwig {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTaperStart = 0.95;  // taper over the outer 5% of the s-range

double sinc(double t) {
  if (std::abs(t) < 1e-4) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

double momentum_unchecked(const WkbContext& ctx, double x) {
  const double m = ctx.params.mass;
  const double w = ctx.params.omega;
  const double arg = 2.0 * m * (ctx.energy - 0.5 * m * w * w * x * x);
  return std::sqrt(std::max(arg, 0.0));
}

// A sin(S/hbar + mu)/sqrt(p) without the guard-band check; callers must keep
// |x| strictly inside the allowed region.
double wave_unchecked(const WkbContext& ctx, double x) {
  const double p = momentum_unchecked(ctx, x);
  const double phase = action(ctx, x) / ctx.params.hbar + ctx.maslov_phase;
  return ctx.amplitude / std::sqrt(p) * std::sin(phase);
}

double taper_weight(double frac) {
  if (frac <= kTaperStart) return 1.0;
  if (frac >= 1.0) return 0.0;
  const double t = (frac - kTaperStart) / (1.0 - kTaperStart);
  return 0.5 * (1.0 + std::cos(kPi * t));
}

// Closed-form terms for X >= 0; the mirror (X,P) -> (-X,-P) handles X < 0.
struct ClosedTerms {
  double ridge = 0.0;  // the two caustic sinc terms
  double cross = 0.0;  // the cos(2S/hbar + 2mu) interference term
};

ClosedTerms closed_terms(const WkbContext& ctx, PhaseSpacePoint pt) {
  double X = pt.X;
  double P = pt.P;
  if (std::abs(X) >= ctx.x_turn)
    throw OutsideAllowedRegion("wigner_wkb_closed: |X| must be < x_turn");
  if (X < 0.0) {
    X = -X;
    P = -P;
  }
  const double hbar = ctx.params.hbar;
  const double u = ctx.x_turn - X;
  const double p = momentum_unchecked(ctx, X);
  ClosedTerms out;
  if (p == 0.0) return out;
  const double amp2 = ctx.amplitude * ctx.amplitude;
  const double scale = 2.0 * u / hbar;
  const double t_plus = scale * sinc(2.0 * (P + p) * u / hbar);
  const double t_minus = scale * sinc(2.0 * (P - p) * u / hbar);
  const double t_zero = scale * sinc(2.0 * P * u / hbar);
  const double s_over_h = action(ctx, X) / hbar;
  out.ridge = amp2 / (4.0 * kPi * p) * (t_plus + t_minus);
  out.cross = -amp2 / (2.0 * kPi * p) * t_zero *
              std::cos(2.0 * (s_over_h + ctx.maslov_phase));
  return out;
}

// Gaussian convolution along X at fixed P of a closed-form term selected by
// `cross_only`; outside the allowed region the semiclassical W is taken as 0.
double smooth_closed(const WkbContext& ctx, PhaseSpacePoint pt, double sigma_x,
                     bool cross_only) {
  if (std::abs(pt.X) >= ctx.x_turn)
    throw OutsideAllowedRegion("wigner_wkb_smoothed: |X| must be < x_turn");
  const double p_here = momentum_unchecked(ctx, pt.X);
  const double fringe = kPi * ctx.params.hbar / p_here;
  if (!(sigma_x >= fringe))
    throw SmoothingTooNarrow(
        "wigner_wkb_smoothed: sigma_x is below the local interference wavelength");

  const double p0 = std::sqrt(2.0 * ctx.params.mass * ctx.energy);
  const double finest = kPi * ctx.params.hbar / (8.0 * p0);
  const double h = std::min(sigma_x / 6.0, finest);
  const int half = static_cast<int>(std::ceil(3.0 * sigma_x / h));
  double wsum = 0.0;
  double acc = 0.0;
  for (int j = -half; j <= half; ++j) {
    const double xj = pt.X + j * h;
    const double wj = std::exp(-0.5 * (j * h) * (j * h) / (sigma_x * sigma_x));
    wsum += wj;
    if (std::abs(xj) >= ctx.x_turn) continue;
    const ClosedTerms t = closed_terms(ctx, {xj, pt.P});
    acc += wj * (cross_only ? t.cross : t.ridge + t.cross);
  }
  return acc / wsum;
}

}  // namespace

WkbContext WkbContext::for_level(const OscillatorParams& params, int n, double guard) {
  if (n < 0) throw std::invalid_argument("WkbContext: n must be >= 0");
  if (!(guard >= 0.0 && guard < 0.5))
    throw std::invalid_argument("WkbContext: guard must lie in [0, 0.5)");
  WkbContext ctx;
  ctx.params = params;
  ctx.n = n;
  ctx.energy = params.level_energy(n);
  ctx.x_turn = std::sqrt(2.0 * ctx.energy / (params.mass * params.omega * params.omega));
  ctx.amplitude = std::sqrt(4.0 * params.mass / params.period());
  ctx.maslov_phase = kPi / 4.0;  // Maslov index 1/2
  ctx.guard = guard;
  return ctx;
}

double local_momentum(const WkbContext& ctx, double x) {
  if (std::abs(x) > ctx.x_turn)
    throw OutsideAllowedRegion("local_momentum: |x| must be <= x_turn");
  return momentum_unchecked(ctx, x);
}

double action(const WkbContext& ctx, double x) {
  if (std::abs(x) > ctx.x_turn)
    throw OutsideAllowedRegion("action: |x| must be <= x_turn");
  const double ratio = std::clamp(x / ctx.x_turn, -1.0, 1.0);
  const double phi = std::asin(ratio);
  return ctx.energy / ctx.params.omega * (phi + 0.5 * std::sin(2.0 * phi) + 0.5 * kPi);
}

double psi_wkb(const WkbContext& ctx, double x) {
  if (std::abs(x) > ctx.x_turn)
    throw OutsideAllowedRegion("psi_wkb: |x| must be <= x_turn");
  if (std::abs(x) > ctx.x_turn * (1.0 - ctx.guard))
    throw TurningPointRegion("psi_wkb: x lies inside the turning-point guard band");
  return wave_unchecked(ctx, x);
}

double wigner_wkb_numeric(const WkbContext& ctx, PhaseSpacePoint pt) {
  if (std::abs(pt.X) >= ctx.x_turn)
    throw OutsideAllowedRegion("wigner_wkb_numeric: |X| must be < x_turn");
  const double hbar = ctx.params.hbar;
  const double s_max = 2.0 * (ctx.x_turn - std::abs(pt.X));
  const double p0 = std::sqrt(2.0 * ctx.params.mass * ctx.energy);

  auto integrand = [&](double s) {
    const double frac = std::abs(s) / s_max;
    const double w = taper_weight(frac);
    if (w == 0.0) return 0.0;
    const double x1 = pt.X - 0.5 * s;
    const double x2 = pt.X + 0.5 * s;
    if (std::abs(x1) >= ctx.x_turn || std::abs(x2) >= ctx.x_turn) return 0.0;
    return std::cos(pt.P * s / hbar) * wave_unchecked(ctx, x1) *
           wave_unchecked(ctx, x2) * w;
  };

  const double k_total = (std::abs(pt.P) + p0) / hbar + 1.0 / ctx.params.length_scale();
  const double i_tol = 1e-7;  // dimensionless raw-integral budget, ~1e-7/(pi hbar) in W
  const double raw = integrate_oscillatory(integrand, -s_max, s_max, k_total, i_tol);
  return raw / (2.0 * kPi * hbar);
}

double wigner_wkb_closed(const WkbContext& ctx, PhaseSpacePoint pt) {
  const ClosedTerms t = closed_terms(ctx, pt);
  return t.ridge + t.cross;
}

double wigner_wkb_cross_term(const WkbContext& ctx, PhaseSpacePoint pt) {
  return closed_terms(ctx, pt).cross;
}

double wigner_wkb_smoothed(const WkbContext& ctx, PhaseSpacePoint pt, double sigma_x) {
  return smooth_closed(ctx, pt, sigma_x, false);
}

double wigner_wkb_smoothed_cross(const WkbContext& ctx, PhaseSpacePoint pt,
                                 double sigma_x) {
  return smooth_closed(ctx, pt, sigma_x, true);
}

}  // namespace oscwig

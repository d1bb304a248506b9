#include "oscwig/oscillator.hpp"

#include <algorithm>
#include <sstream>

#include "oscwig/special_functions.hpp"

namespace oscwig {

QuantumState QuantumState::eigenstate(int n) {
  if (n < 0) throw std::invalid_argument("QuantumState: eigenstate index must be >= 0");
  return QuantumState(Eigenstate{n});
}

QuantumState QuantumState::coherent(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("QuantumState: coherent label must be finite");
  return QuantumState(CoherentState{z});
}

QuantumState QuantumState::superposition(
    std::vector<std::pair<int, std::complex<double>>> terms) {
  if (terms.empty())
    throw std::invalid_argument("QuantumState: superposition needs at least one term");
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double norm2 = 0.0;
  int prev = -1;
  for (const auto& [n, c] : terms) {
    if (n < 0) throw std::invalid_argument("QuantumState: superposition level must be >= 0");
    if (n == prev)
      throw std::invalid_argument("QuantumState: duplicate level in superposition");
    prev = n;
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw std::invalid_argument(
        "QuantumState: superposition amplitudes must satisfy sum |c|^2 = 1 within 1e-12");
  return QuantumState(Superposition{std::move(terms)});
}

double QuantumState::mean_energy(const OscillatorParams& params) const {
  if (const auto* e = as_eigenstate()) return params.level_energy(e->n);
  if (const auto* c = as_coherent())
    return params.hbar * params.omega * (std::norm(c->z) + 0.5);
  const auto* s = as_superposition();
  double acc = 0.0;
  for (const auto& [n, c] : s->terms) acc += std::norm(c) * params.level_energy(n);
  return acc;
}

int QuantumState::max_level() const {
  if (const auto* e = as_eigenstate()) return e->n;
  if (const auto* c = as_coherent()) {
    const double r = std::abs(c->z);
    // Poisson weights e^{-|z|^2} |z|^{2n} / n! are < 1e-16 past this level.
    return static_cast<int>(std::ceil(r * r + 12.0 * r + 20.0));
  }
  return as_superposition()->terms.back().first;
}

std::string QuantumState::describe() const {
  std::ostringstream os;
  if (const auto* e = as_eigenstate()) {
    os << "eigenstate n=" << e->n;
  } else if (const auto* c = as_coherent()) {
    os << "coherent z=" << c->z.real();
    os << (c->z.imag() < 0 ? "" : "+") << c->z.imag() << "i";
  } else {
    os << "superposition of " << as_superposition()->terms.size() << " levels";
  }
  return os.str();
}

double psi_eigen(const OscillatorParams& params, int n, double x) {
  if (n < 0) throw std::invalid_argument("psi_eigen: n must be >= 0");
  const double a = params.length_scale();
  return hermite_function(n, x / a) / std::sqrt(a);
}

std::complex<double> psi_coherent(const OscillatorParams& params,
                                  std::complex<double> z, double x) {
  if (std::abs(z) > 30.0)
    throw std::invalid_argument("psi_coherent: |z| > 30 is outside the validated range");
  const double a = params.length_scale();
  const double u = x / a;
  const std::complex<double> expo =
      -0.5 * (std::norm(z) + z * z) - 0.5 * u * u + std::numbers::sqrt2 * z * u;
  return std::exp(expo) / std::sqrt(a * std::sqrt(std::numbers::pi));
}

std::complex<double> coherent_evolve(std::complex<double> z, double t, double omega) {
  return z * std::polar(1.0, -omega * t);
}

std::complex<double> psi(const OscillatorParams& params, const QuantumState& state,
                         double x) {
  if (const auto* e = state.as_eigenstate())
    return {psi_eigen(params, e->n, x), 0.0};
  if (const auto* c = state.as_coherent()) return psi_coherent(params, c->z, x);

  const auto* s = state.as_superposition();
  const double a = params.length_scale();
  const double u = x / a;
  const double g = 0.5 * u * u;
  std::complex<double> acc = 0.0;
  if (g < 700.0) {
    // One recurrence pass collects every needed level.
    double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-g);
    double h1 = std::numbers::sqrt2 * u * h0;
    std::size_t idx = 0;
    const int nmax = s->terms.back().first;
    for (int k = 0; k <= nmax; ++k) {
      const double hk = (k == 0) ? h0 : h1;
      if (idx < s->terms.size() && s->terms[idx].first == k) {
        acc += s->terms[idx].second * hk;
        ++idx;
      }
      if (k >= 1) {
        const double h2 =
            std::sqrt(2.0 / (k + 1.0)) * u * h1 - std::sqrt(k / (k + 1.0)) * h0;
        h0 = h1;
        h1 = h2;
      }
    }
  } else {
    for (const auto& [n, c] : s->terms) acc += c * hermite_function(n, u);
  }
  return acc / std::sqrt(a);
}

double support_radius_x(const OscillatorParams& params, const QuantumState& state) {
  const double a = params.length_scale();
  if (const auto* c = state.as_coherent()) {
    const double x0 = std::numbers::sqrt2 * a * c->z.real();
    return std::abs(x0) + 12.0 * a;
  }
  const int n = state.max_level();
  return a * (std::sqrt(2.0 * n + 1.0) + 12.0);
}

double support_radius_p(const OscillatorParams& params, const QuantumState& state) {
  const double ps = params.momentum_scale();
  if (const auto* c = state.as_coherent()) {
    const double p0 = std::numbers::sqrt2 * ps * c->z.imag();
    return std::abs(p0) + 12.0 * ps;
  }
  const int n = state.max_level();
  return ps * (std::sqrt(2.0 * n + 1.0) + 12.0);
}

}  // namespace oscwig

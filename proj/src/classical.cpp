#include "oscwig/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "oscwig/wigner.hpp"

namespace oscwig {

namespace {

constexpr double kPi = std::numbers::pi;

double angle_average(const std::function<double(double)>& g) {
  // Periodic trapezoid: spectrally convergent for smooth 2pi-periodic g.
  int nodes = 16;
  double prev = std::numeric_limits<double>::quiet_NaN();
  while (true) {
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) acc += g(2.0 * kPi * j / nodes);
    const double value = acc / nodes;
    if (std::isfinite(prev) && std::abs(value - prev) < 1e-12) return value;
    if (nodes >= (1 << 20)) return value;
    prev = value;
    nodes *= 2;
  }
}

}  // namespace

PhaseSpacePoint action_angle_to_cartesian(const OscillatorParams& params, double I,
                                          double phi) {
  if (!(I >= 0.0)) throw std::invalid_argument("action_angle_to_cartesian: I must be >= 0");
  const double r = std::sqrt(2.0 * I / (params.mass * params.omega));
  return {r * std::cos(phi), -params.mass * params.omega * r * std::sin(phi)};
}

double action_of_point(const OscillatorParams& params, PhaseSpacePoint pt) {
  const double energy = pt.P * pt.P / (2.0 * params.mass) +
                        0.5 * params.mass * params.omega * params.omega * pt.X * pt.X;
  return energy / params.omega;
}

double classical_expectation(const OscillatorParams& params, double E,
                             const std::function<double(PhaseSpacePoint)>& f) {
  if (!(E > 0.0)) throw std::invalid_argument("classical_expectation: E must be > 0");
  const double I = E / params.omega;
  return angle_average(
      [&](double phi) { return f(action_angle_to_cartesian(params, I, phi)); });
}

double classical_expectation(const OscillatorParams& params, double E,
                             const TestFunctional& f) {
  f.validate();
  return classical_expectation(
      params, E, std::function<double(PhaseSpacePoint)>(
                     [&](PhaseSpacePoint pt) { return f(pt.X, pt.P); }));
}

double classical_density_smeared(const OscillatorParams& params, double E,
                                 PhaseSpacePoint pt, double sigma_E) {
  if (!(sigma_E > 0.0))
    throw std::invalid_argument("classical_density_smeared: sigma_E must be > 0");
  const double de = action_of_point(params, pt) * params.omega - E;
  const double norm = 1.0 / (std::sqrt(2.0 * kPi) * sigma_E);
  return norm * std::exp(-0.5 * de * de / (sigma_E * sigma_E)) / params.period();
}

namespace {

// Shared grid-based expectation used by quantum_expectation and the sweep.
// The integrand W f is supported where both factors live, so the grid covers
// the intersection of the state support and the union of functional supports;
// nodes resolve the Wigner fringe scale.
struct ExpectationGrid {
  double ex = 0.0, ep = 0.0;
  int nx = 0, np = 0;
};

ExpectationGrid expectation_grid(const OscillatorParams& params, int n_top,
                                 const std::vector<TestFunctional>& fs,
                                 double points_per_fringe, double padding_a) {
  const double a = params.length_scale();
  const double ps = params.momentum_scale();
  const double root = std::sqrt(2.0 * n_top + 1.0);
  ExpectationGrid g;
  g.ex = a * (root + padding_a);
  g.ep = ps * (root + padding_a);
  if (!fs.empty()) {
    double fx = 0.0, fp = 0.0;
    for (const auto& f : fs) {
      fx = std::max(fx, std::abs(f.center_x) + 6.5 * f.sigma_x);
      fp = std::max(fp, std::abs(f.center_p) + 6.5 * f.sigma_p);
    }
    g.ex = std::min(g.ex, std::max(fx, 8.0 * a));
    g.ep = std::min(g.ep, std::max(fp, 8.0 * ps));
  }
  const double lx = kPi * a / root;
  const double lp = kPi * ps / root;
  g.nx = std::max(401, static_cast<int>(std::ceil(2.0 * g.ex / (lx / points_per_fringe))));
  g.np = std::max(401, static_cast<int>(std::ceil(2.0 * g.ep / (lp / points_per_fringe))));
  if (g.nx % 2 == 0) ++g.nx;
  if (g.np % 2 == 0) ++g.np;
  return g;
}

// Trapezoid of W times each functional. Rows are evaluated in parallel; the
// reduction over row partials runs serially in index order, so the result is
// bitwise independent of the scheduling.
std::vector<double> integrate_functionals(const OscillatorParams& params, int n,
                                          int window, const ExpectationGrid& g,
                                          const std::vector<TestFunctional>& fs,
                                          bool* support_truncated) {
  const double dx = 2.0 * g.ex / (g.nx - 1);
  const double dp = 2.0 * g.ep / (g.np - 1);
  const std::size_t nf = fs.size();
  std::vector<double> row_partials(static_cast<std::size_t>(g.nx) * nf, 0.0);
  std::vector<double> row_peak(g.nx, 0.0);
  std::vector<double> row_edge(g.nx, 0.0);

  auto do_rows = [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double x = -g.ex + i * dx;
      const double wi = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      double* acc = &row_partials[static_cast<std::size_t>(i) * nf];
      for (int j = 0; j < g.np; ++j) {
        const double p = -g.ep + j * dp;
        const double wj = (j == 0 || j == g.np - 1) ? 0.5 : 1.0;
        const double w = (window > 0) ? wigner_averaged(params, n, window, {x, p})
                                      : wigner_eigen_exact(params, n, {x, p});
        const bool on_edge = i == 0 || i == g.nx - 1 || j == 0 || j == g.np - 1;
        const double ww = wi * wj * w;
        for (std::size_t q = 0; q < nf; ++q) {
          const double wf = w * fs[q](x, p);
          row_peak[i] = std::max(row_peak[i], std::abs(wf));
          if (on_edge) row_edge[i] = std::max(row_edge[i], std::abs(wf));
          acc[q] += ww * fs[q](x, p);
        }
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 16));
  if (workers <= 1 || g.nx < 4 * workers) {
    do_rows(0, g.nx);
  } else {
    std::vector<std::thread> pool;
    const int rows_per = (g.nx + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int i0 = w * rows_per;
      const int i1 = std::min(g.nx, i0 + rows_per);
      if (i0 < i1) pool.emplace_back(do_rows, i0, i1);
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> acc(nf, 0.0);
  double peak = 0.0, edge = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    for (std::size_t q = 0; q < nf; ++q)
      acc[q] += row_partials[static_cast<std::size_t>(i) * nf + q];
    peak = std::max(peak, row_peak[i]);
    edge = std::max(edge, row_edge[i]);
  }
  for (double& v : acc) v *= dx * dp;
  if (support_truncated) *support_truncated = peak > 0.0 && edge > 1e-10 * peak;
  return acc;
}

}  // namespace

double quantum_expectation(const OscillatorParams& params, const QuantumState& state,
                           const TestFunctional& f, int window,
                           bool* support_truncated) {
  f.validate();
  const std::vector<TestFunctional> fs{f};
  if (const auto* e = state.as_eigenstate()) {
    if (window < 0 || e->n - window < 0)
      throw std::invalid_argument("quantum_expectation: require 0 <= window <= n");
    const ExpectationGrid g = expectation_grid(params, e->n + window, fs, 6.0, 8.0);
    return integrate_functionals(params, e->n, window, g, fs, support_truncated)[0];
  }
  if (window != 0)
    throw std::invalid_argument("quantum_expectation: window requires an eigenstate");

  // Coherent states and superpositions: same trapezoid, pointwise dispatch.
  const ExpectationGrid g = expectation_grid(params, state.max_level(), fs, 6.0, 8.0);
  const double dx = 2.0 * g.ex / (g.nx - 1);
  const double dp = 2.0 * g.ep / (g.np - 1);
  double acc = 0.0, peak = 0.0, edge = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double x = -g.ex + i * dx;
    const double wi = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
    for (int j = 0; j < g.np; ++j) {
      const double p = -g.ep + j * dp;
      const double wj = (j == 0 || j == g.np - 1) ? 0.5 : 1.0;
      const double w = wigner_point(params, state, {x, p});
      peak = std::max(peak, std::abs(w));
      if (i == 0 || i == g.nx - 1 || j == 0 || j == g.np - 1)
        edge = std::max(edge, std::abs(w));
      acc += wi * wj * w * f(x, p);
    }
  }
  if (support_truncated) *support_truncated = peak > 0.0 && edge > 1e-10 * peak;
  return acc * dx * dp;
}

ConvergenceReport convergence_sweep(double mass, double omega, double e_clas,
                                    const std::vector<int>& n_list,
                                    const std::vector<TestFunctional>& functionals,
                                    const SweepOptions& options) {
  if (!(e_clas > 0.0)) throw std::invalid_argument("convergence_sweep: E must be > 0");
  if (n_list.empty()) throw std::invalid_argument("convergence_sweep: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("convergence_sweep: levels must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("convergence_sweep: n list must be ascending");
  }
  for (const auto& f : functionals) f.validate();

  ConvergenceReport report;
  report.e_clas = e_clas;

  for (int n : n_list) {
    const double hbar = e_clas / (n * omega);
    const OscillatorParams params(mass, omega, hbar);
    std::vector<int> windows{0};
    if (options.window > 0 && n - options.window >= 0) windows.push_back(options.window);
    for (int window : windows) {
      bool truncated = false;
      const ExpectationGrid g = expectation_grid(
          params, n + window, functionals, options.points_per_fringe, options.padding_a);
      const std::vector<double> quantum =
          integrate_functionals(params, n, window, g, functionals, &truncated);
      for (std::size_t q = 0; q < functionals.size(); ++q) {
        ConvergenceRow row;
        row.n = n;
        row.hbar = hbar;
        row.functional_id = functionals[q].id;
        row.window = window;
        row.quantum = quantum[q];
        row.classical = classical_expectation(params, e_clas, functionals[q]);
        row.abs_err = std::abs(row.quantum - row.classical);
        row.support_truncated = truncated;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::vector<TestFunctional> default_functional_bank(double mass, double omega,
                                                    double e_clas) {
  if (!(e_clas > 0.0))
    throw std::invalid_argument("default_functional_bank: E must be > 0");
  const double rx = std::sqrt(2.0 * e_clas / (mass * omega * omega));  // orbit radius
  const double rp = std::sqrt(2.0 * mass * e_clas);
  std::vector<TestFunctional> bank;
  bank.push_back({"onshell_x", rx, 0.0, 0.30 * rx, 0.30 * rp});
  bank.push_back({"onshell_p", 0.0, -rp, 0.30 * rx, 0.30 * rp});
  bank.push_back({"origin", 0.0, 0.0, 0.35 * rx, 0.35 * rp});
  bank.push_back({"offshell_1p5", 1.5 * rx, 0.0, 0.30 * rx, 0.30 * rp});
  bank.push_back({"wide", 0.0, 0.0, 3.0 * rx, 3.0 * rp});
  return bank;
}

}  // namespace oscwig

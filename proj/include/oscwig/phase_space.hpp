#pragma once

#include <Eigen/Core>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "oscwig/oscillator.hpp"

namespace oscwig {

/// Rectangular phase-space grid; sample points are the uniform nodes
/// including both endpoints.
struct PhaseGrid {
  double x_min = -1.0, x_max = 1.0;
  double p_min = -1.0, p_max = 1.0;
  int nx = 2, np = 2;

  PhaseGrid() = default;
  PhaseGrid(double xmin, double xmax, double pmin, double pmax, int nkx, int nkp)
      : x_min(xmin), x_max(xmax), p_min(pmin), p_max(pmax), nx(nkx), np(nkp) {
    validate();
  }

  void validate() const {
    if (!(x_min < x_max) || !(p_min < p_max))
      throw std::invalid_argument("PhaseGrid: require x_min < x_max and p_min < p_max");
    if (nx < 2 || np < 2)
      throw std::invalid_argument("PhaseGrid: require nx >= 2 and np >= 2");
  }

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double p(int j) const { return p_min + j * dp(); }
};

enum class EvalMethod {
  exact_laguerre,
  quadrature,
  wkb_closed,
  wkb_numeric,
  averaged,
  classical_smeared,
};

const char* to_string(EvalMethod m);

/// A grid plus evaluated Wigner values (units 1/action), tagged with how the
/// values were produced and for which state.
struct WignerField {
  PhaseGrid grid;
  Eigen::ArrayXXd values;  // values(i, j) at (grid.x(i), grid.p(j))
  EvalMethod method = EvalMethod::exact_laguerre;
  std::string state;

  bool all_finite() const { return values.isFinite().all(); }
};

/// Trapezoidal integral over the grid, fixed deterministic summation order.
double field_integral(const WignerField& field);

/// True if any boundary value exceeds rel times the field's peak magnitude,
/// i.e. the grid cuts into the support.
bool field_support_truncated(const WignerField& field, double rel = 1e-10);

/// Fills values(i, j) = fn(x_i, p_j) in parallel over row blocks. Each entry
/// depends only on its own node, so the result is bitwise independent of the
/// scheduling.
template <class F>
void fill_field(WignerField& field, F&& fn) {
  const int nx = field.grid.nx;
  const int np = field.grid.np;
  field.values.resize(nx, np);

  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 16));
  if (workers <= 1 || nx < 4 * workers) {
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < np; ++j) field.values(i, j) = fn(field.grid.x(i), field.grid.p(j));
    return;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const int rows_per = (nx + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int i0 = w * rows_per;
    const int i1 = std::min(nx, i0 + rows_per);
    if (i0 >= i1) break;
    pool.emplace_back([&, w, i0, i1]() {
      try {
        for (int i = i0; i < i1; ++i)
          for (int j = 0; j < np; ++j)
            field.values(i, j) = fn(field.grid.x(i), field.grid.p(j));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace oscwig

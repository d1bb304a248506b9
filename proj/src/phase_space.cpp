#include "oscwig/phase_space.hpp"

namespace oscwig {

const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::exact_laguerre: return "exact-laguerre";
    case EvalMethod::quadrature: return "quadrature";
    case EvalMethod::wkb_closed: return "wkb-closed";
    case EvalMethod::wkb_numeric: return "wkb-numeric";
    case EvalMethod::averaged: return "averaged";
    case EvalMethod::classical_smeared: return "classical-smeared";
  }
  return "unknown";
}

double field_integral(const WignerField& field) {
  const PhaseGrid& g = field.grid;
  double acc = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double wi = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j < g.np; ++j) {
      const double wj = (j == 0 || j == g.np - 1) ? 0.5 : 1.0;
      row += wj * field.values(i, j);
    }
    acc += wi * row;
  }
  return acc * g.dx() * g.dp();
}

bool field_support_truncated(const WignerField& field, double rel) {
  const double peak = field.values.abs().maxCoeff();
  if (peak == 0.0) return false;
  double edge = field.values.row(0).abs().maxCoeff();
  edge = std::max(edge, field.values.row(field.grid.nx - 1).abs().maxCoeff());
  edge = std::max(edge, field.values.col(0).abs().maxCoeff());
  edge = std::max(edge, field.values.col(field.grid.np - 1).abs().maxCoeff());
  return edge > rel * peak;
}

}  // namespace oscwig

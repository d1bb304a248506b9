// oscwig — Wigner functions of the 1D harmonic oscillator.
//
// Subcommands:
//   grid         evaluate W on a phase-space grid (csv | json | ppm)
//   curve        pi*hbar*W as a function of E(X,P)/E_clas (csv)
//   converge     quantum vs classical expectations at fixed n*hbar*omega (json)
//   wkb-compare  exact vs semiclassical W on a grid (csv)
//
// Exit codes: 0 success, 2 configuration error, 3 truncated support under
// --strict, 1 anything else.

#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscwig/classical.hpp"
#include "oscwig/errors.hpp"
#include "oscwig/io.hpp"
#include "oscwig/oscillator.hpp"
#include "oscwig/wigner.hpp"
#include "oscwig/wkb.hpp"

namespace {

using namespace oscwig;

struct CommonOpts {
  double mass = 1.0, omega = 1.0, hbar = 1.0;
  std::optional<int> n;
  std::optional<double> z_re, z_im;
  std::string coeffs_path;
  std::string out;
  std::string format = "csv";
  bool strict = false;
  bool no_meta = false;
};

struct GridOpts {
  std::optional<double> xmin, xmax, pmin, pmax;
  int nx = 501, np = 501;
  bool auto_grid = false;
};

int fail_config(const std::string& msg) {
  std::fprintf(stderr, "oscwig: %s\n", msg.c_str());
  return 2;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_state = true) {
  cmd->add_option("--mass", o.mass, "oscillator mass");
  cmd->add_option("--omega", o.omega, "oscillator frequency");
  cmd->add_option("--hbar", o.hbar, "Planck constant");
  if (with_state) {
    cmd->add_option("--n", o.n, "eigenstate quantum number");
    cmd->add_option("--z-re", o.z_re, "coherent state label, real part");
    cmd->add_option("--z-im", o.z_im, "coherent state label, imaginary part");
    cmd->add_option("--coeffs", o.coeffs_path,
                    "JSON file of [n, re, im] superposition amplitudes");
  }
  cmd->add_option("--out", o.out, "output path")->required();
  cmd->add_option("--format", o.format, "csv | json | ppm");
  cmd->add_flag("--strict", o.strict, "exit 3 when the grid truncates the support");
  cmd->add_flag("--no-meta", o.no_meta, "omit metadata from JSON output");
}

void add_grid(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--xmin", g.xmin);
  cmd->add_option("--xmax", g.xmax);
  cmd->add_option("--pmin", g.pmin);
  cmd->add_option("--pmax", g.pmax);
  cmd->add_option("--nx", g.nx, "grid nodes along X");
  cmd->add_option("--np", g.np, "grid nodes along P");
  cmd->add_flag("--auto-grid", g.auto_grid, "size the grid from the state support");
}

// Returns the state described by the flags, or an error message.
std::optional<QuantumState> make_state(const CommonOpts& o, std::string& err) {
  const int selectors = (o.n.has_value() ? 1 : 0) +
                        ((o.z_re.has_value() || o.z_im.has_value()) ? 1 : 0) +
                        (!o.coeffs_path.empty() ? 1 : 0);
  if (selectors != 1) {
    err = "exactly one state selector required (--n | --z-re/--z-im | --coeffs)";
    return std::nullopt;
  }
  try {
    if (o.n) return QuantumState::eigenstate(*o.n);
    if (o.z_re || o.z_im)
      return QuantumState::coherent({o.z_re.value_or(0.0), o.z_im.value_or(0.0)});
    return QuantumState::superposition(read_coeffs_json(o.coeffs_path));
  } catch (const std::exception& e) {
    err = e.what();
    return std::nullopt;
  }
}

std::optional<PhaseGrid> make_grid(const GridOpts& g, const OscillatorParams& prm,
                                   const QuantumState& state, std::string& err) {
  if (g.auto_grid) return auto_grid(prm, state, g.nx, g.np);
  if (!(g.xmin && g.xmax && g.pmin && g.pmax)) {
    err = "grid must be given explicitly (--xmin/--xmax/--pmin/--pmax) or via --auto-grid";
    return std::nullopt;
  }
  try {
    return PhaseGrid(*g.xmin, *g.xmax, *g.pmin, *g.pmax, g.nx, g.np);
  } catch (const std::exception& e) {
    err = e.what();
    return std::nullopt;
  }
}

int run_grid(const CommonOpts& o, const GridOpts& go, const std::string& method,
             int window, double sigma_e, std::optional<double> energy) {
  OscillatorParams prm;
  try {
    prm = OscillatorParams(o.mass, o.omega, o.hbar);
  } catch (const std::exception& e) {
    return fail_config(e.what());
  }
  std::string err;
  const auto state = make_state(o, err);
  if (!state) return fail_config(err);
  const auto grid = make_grid(go, prm, *state, err);
  if (!grid) return fail_config(err);

  WignerField field;
  field.grid = *grid;
  field.state = state->describe();

  const auto* eig = state->as_eigenstate();
  if (method == "exact") {
    if (state->as_superposition())
      return fail_config("--method exact supports eigenstates and coherent states; "
                         "use --method quadrature for superpositions");
    field.method = EvalMethod::exact_laguerre;
    fill_field(field, [&](double x, double p) {
      return wigner_point(prm, *state, {x, p});
    });
  } else if (method == "quadrature") {
    field.method = EvalMethod::quadrature;
    fill_field(field, [&](double x, double p) {
      return wigner_quadrature(prm, *state, {x, p});
    });
  } else if (method == "wkb" || method == "wkb-numeric") {
    if (!eig) return fail_config("--method " + method + " requires --n");
    const bool numeric = method == "wkb-numeric";
    field.method = numeric ? EvalMethod::wkb_numeric : EvalMethod::wkb_closed;
    const WkbContext ctx = WkbContext::for_level(prm, eig->n);
    fill_field(field, [&](double x, double p) -> double {
      if (std::abs(x) >= ctx.x_turn) return 0.0;  // outside the allowed region
      return numeric ? wigner_wkb_numeric(ctx, {x, p})
                     : wigner_wkb_closed(ctx, {x, p});
    });
  } else if (method == "averaged") {
    if (!eig) return fail_config("--method averaged requires --n");
    if (window < 0 || eig->n - window < 0)
      return fail_config("--window must satisfy 0 <= N_W <= n");
    field.method = EvalMethod::averaged;
    fill_field(field, [&](double x, double p) {
      return wigner_averaged(prm, eig->n, window, {x, p});
    });
  } else if (method == "classical") {
    if (!(sigma_e > 0.0)) return fail_config("--method classical requires --sigma-e > 0");
    double e_ref;
    if (energy) {
      e_ref = *energy;
    } else if (eig) {
      if (eig->n < 1) return fail_config("--method classical requires --n >= 1 or --energy");
      e_ref = eig->n * prm.hbar * prm.omega;  // E_clas = n hbar omega
    } else {
      return fail_config("--method classical requires --n or --energy");
    }
    if (!(e_ref > 0.0)) return fail_config("--energy must be > 0");
    field.method = EvalMethod::classical_smeared;
    fill_field(field, [&](double x, double p) {
      return classical_density_smeared(prm, e_ref, {x, p}, sigma_e);
    });
  } else {
    return fail_config("unknown --method " + method);
  }

  if (o.strict && field_support_truncated(field)) {
    std::fprintf(stderr, "oscwig: grid truncates the state support (--strict)\n");
    return 3;
  }

  if (o.format == "csv") {
    write_field_csv(field, o.out);
  } else if (o.format == "json") {
    write_field_json(field, o.out, !o.no_meta);
  } else if (o.format == "ppm") {
    write_field_ppm(field, o.out);
  } else {
    return fail_config("unknown --format " + o.format);
  }
  return 0;
}

int run_curve(const CommonOpts& o, const std::string& method, int window,
              double r_max, int samples) {
  if (!o.n) return fail_config("curve requires --n");
  if (o.format != "csv") return fail_config("curve writes csv only");
  if (method == "averaged") {
    if (window < 1) return fail_config("--method averaged requires --window >= 1");
  } else if (method != "exact") {
    return fail_config("curve supports --method exact | averaged");
  }
  try {
    const ScaledEnergyCurve curve = scaled_energy_curve(*o.n, r_max, samples, window);
    write_curve_csv(curve, o.out);
  } catch (const std::invalid_argument& e) {
    return fail_config(e.what());
  }
  return 0;
}

int run_converge(const CommonOpts& o, double energy, const std::vector<int>& n_list,
                 const std::string& functionals_path, int window) {
  if (o.format != "json") return fail_config("converge writes json only");
  if (n_list.empty()) return fail_config("converge requires --n-list");
  try {
    std::vector<TestFunctional> bank =
        functionals_path.empty() ? default_functional_bank(o.mass, o.omega, energy)
                                 : read_functionals_json(functionals_path);
    SweepOptions so;
    so.window = window;
    const ConvergenceReport report =
        convergence_sweep(o.mass, o.omega, energy, n_list, bank, so);
    bool truncated = false;
    for (const auto& r : report.rows) truncated = truncated || r.support_truncated;
    if (o.strict && truncated) {
      std::fprintf(stderr, "oscwig: expectation grid truncates a support (--strict)\n");
      return 3;
    }
    write_report_json(report, o.out, !o.no_meta,
                      "auto (fringe-resolving, support + 8a padding)");
  } catch (const std::invalid_argument& e) {
    return fail_config(e.what());
  }
  return 0;
}

int run_wkb_compare(const CommonOpts& o, const GridOpts& go, const std::string& method) {
  if (!o.n) return fail_config("wkb-compare requires --n");
  if (*o.n < 5) return fail_config("wkb-compare requires --n >= 5");
  if (o.format != "csv") return fail_config("wkb-compare writes csv only");
  OscillatorParams prm;
  try {
    prm = OscillatorParams(o.mass, o.omega, o.hbar);
  } catch (const std::exception& e) {
    return fail_config(e.what());
  }
  const QuantumState state = QuantumState::eigenstate(*o.n);
  std::string err;
  const auto grid = make_grid(go, prm, state, err);
  if (!grid) return fail_config(err);
  if (method != "wkb" && method != "wkb-numeric")
    return fail_config("wkb-compare supports --method wkb | wkb-numeric");

  const WkbContext ctx = WkbContext::for_level(prm, *o.n);
  const bool numeric = method == "wkb-numeric";
  const double x_cut = ctx.x_turn * (1.0 - ctx.guard);
  std::vector<WkbCompareRow> rows;
  for (int i = 0; i < grid->nx; ++i) {
    const double x = grid->x(i);
    if (std::abs(x) >= x_cut) continue;  // keep clear of the turning points
    for (int j = 0; j < grid->np; ++j) {
      const double p = grid->p(j);
      WkbCompareRow row;
      row.X = x;
      row.P = p;
      row.w_exact = wigner_eigen_exact(prm, *o.n, {x, p});
      row.w_wkb = numeric ? wigner_wkb_numeric(ctx, {x, p})
                          : wigner_wkb_closed(ctx, {x, p});
      rows.push_back(row);
    }
  }
  write_wkb_compare_csv(rows, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner functions of the 1D quantum harmonic oscillator"};
  app.require_subcommand(1);

  CommonOpts grid_o, curve_o, conv_o, cmp_o;
  GridOpts grid_g, cmp_g;
  std::string grid_method = "exact", cmp_method = "wkb", curve_method = "exact";
  int grid_window = 0, curve_window = 0, conv_window = 0;
  double grid_sigma_e = 0.0;
  std::optional<double> grid_energy;
  double curve_rmax = 1.5;
  int curve_samples = 2000;
  double conv_energy = 0.0;
  std::vector<int> conv_nlist;
  std::string conv_functionals;

  CLI::App* grid = app.add_subcommand("grid", "evaluate W on a phase-space grid");
  add_common(grid, grid_o);
  add_grid(grid, grid_g);
  grid->add_option("--method", grid_method,
                   "exact | quadrature | wkb | wkb-numeric | averaged | classical");
  grid->add_option("--window", grid_window, "averaging half-width N_W");
  grid->add_option("--sigma-e", grid_sigma_e, "energy smearing width for classical");
  grid->add_option("--energy", grid_energy, "shell energy for classical");

  CLI::App* curve = app.add_subcommand("curve", "pi*hbar*W vs E(X,P)/E_clas");
  add_common(curve, curve_o);
  curve->add_option("--method", curve_method, "exact | averaged");
  curve->add_option("--window", curve_window, "averaging half-width N_W");
  curve->add_option("--rmax", curve_rmax, "abscissa upper end");
  curve->add_option("--samples", curve_samples, "sample count");

  CLI::App* conv = app.add_subcommand("converge", "quantum vs classical expectations");
  add_common(conv, conv_o, /*with_state=*/false);
  conv->add_option("--energy", conv_energy, "fixed E_clas = n hbar omega")->required();
  conv->add_option("--n-list", conv_nlist, "ascending eigenstate levels")
      ->required()
      ->delimiter(',');
  conv->add_option("--functionals", conv_functionals, "JSON test-functional bank");
  conv->add_option("--window", conv_window, "also evaluate averaged rows with this N_W");

  CLI::App* cmp = app.add_subcommand("wkb-compare", "exact vs semiclassical W");
  add_common(cmp, cmp_o);
  add_grid(cmp, cmp_g);
  cmp->add_option("--method", cmp_method, "wkb | wkb-numeric");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "oscwig: %s\n", e.what());
    return 2;
  }

  try {
    if (grid->parsed())
      return run_grid(grid_o, grid_g, grid_method, grid_window, grid_sigma_e, grid_energy);
    if (curve->parsed())
      return run_curve(curve_o, curve_method, curve_window, curve_rmax, curve_samples);
    if (conv->parsed())
      return run_converge(conv_o, conv_energy, conv_nlist, conv_functionals, conv_window);
    if (cmp->parsed()) return run_wkb_compare(cmp_o, cmp_g, cmp_method);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "oscwig: %s\n", e.what());
    return 1;
  }
  return 2;
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscwig/classical.hpp"
#include "oscwig/phase_space.hpp"
#include "oscwig/wigner.hpp"

namespace oscwig {

/// Writes the whole byte string to a temporary file in the target directory
/// and renames it into place, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& bytes);

/// Round-trip-exact decimal formatting of a double (17 significant digits).
std::string format_double(double v);

/// CSV with header X,P,W; row-major with P fastest; LF line endings.
std::string render_field_csv(const WignerField& field);
void write_field_csv(const WignerField& field, const std::string& path);

/// A parsed CSV of doubles: header names plus data rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

/// JSON document with grid metadata and the value matrix. Throws if any value
/// is not finite. with_meta=false drops the metadata block.
std::string render_field_json(const WignerField& field, bool with_meta);
void write_field_json(const WignerField& field, const std::string& path,
                      bool with_meta);

/// Binary P6 heatmap, linear diverging map: blue = -max|W|, white = 0,
/// red = +max|W|, symmetric clipping. A zero field renders uniform white.
/// Rows run from p_max (top) to p_min (bottom), columns from x_min to x_max.
std::string render_field_ppm(const WignerField& field);
void write_field_ppm(const WignerField& field, const std::string& path);

/// CSV with header E_over_Eclas,pi_hbar_W.
std::string render_curve_csv(const ScaledEnergyCurve& curve);
void write_curve_csv(const ScaledEnergyCurve& curve, const std::string& path);

/// CSV with header X,P,W_exact,W_wkb,abs_diff (one row per retained grid node).
struct WkbCompareRow {
  double X = 0.0, P = 0.0, w_exact = 0.0, w_wkb = 0.0;
};
std::string render_wkb_compare_csv(const std::vector<WkbCompareRow>& rows);
void write_wkb_compare_csv(const std::vector<WkbCompareRow>& rows,
                           const std::string& path);

/// Deterministic JSON serialization of a convergence report. Throws if any
/// value is not finite.
std::string render_report_json(const ConvergenceReport& report, bool with_meta,
                               const std::string& grid_note);
void write_report_json(const ConvergenceReport& report, const std::string& path,
                       bool with_meta, const std::string& grid_note);

/// JSON array of {id, center_x, center_p, sigma_x, sigma_p} objects.
std::vector<TestFunctional> read_functionals_json(const std::string& path);

/// JSON array of [n, re, im] triples describing superposition amplitudes.
std::vector<std::pair<int, std::complex<double>>> read_coeffs_json(
    const std::string& path);

}  // namespace oscwig

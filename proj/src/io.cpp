#include "oscwig/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace oscwig {

namespace {

using ordered_json = nlohmann::ordered_json;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string("refusing to serialize non-finite value in ") +
                             what);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kVersion = "1.0.0";

}  // namespace

void atomic_write(const std::string& path, const std::string& bytes) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_field_csv(const WignerField& field) {
  std::string out = "X,P,W\n";
  for (int i = 0; i < field.grid.nx; ++i) {
    const std::string xs = format_double(field.grid.x(i));
    for (int j = 0; j < field.grid.np; ++j) {
      out += xs;
      out += ',';
      out += format_double(field.grid.p(j));
      out += ',';
      out += format_double(field.values(i, j));
      out += '\n';
    }
  }
  return out;
}

void write_field_csv(const WignerField& field, const std::string& path) {
  atomic_write(path, render_field_csv(field));
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != table.header.size())
      throw std::runtime_error("ragged csv row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_field_json(const WignerField& field, bool with_meta) {
  ordered_json doc;
  doc["grid"] = {{"x_min", field.grid.x_min}, {"x_max", field.grid.x_max},
                 {"p_min", field.grid.p_min}, {"p_max", field.grid.p_max},
                 {"nx", field.grid.nx},       {"np", field.grid.np}};
  doc["method"] = to_string(field.method);
  doc["state"] = field.state;
  ordered_json values = ordered_json::array();
  for (int i = 0; i < field.grid.nx; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < field.grid.np; ++j) {
      require_finite(field.values(i, j), "field values");
      row.push_back(field.values(i, j));
    }
    values.push_back(std::move(row));
  }
  doc["values"] = std::move(values);
  if (with_meta) {
    doc["metadata"] = {{"generator", "oscwig"}, {"version", kVersion}, {"format", 1}};
  }
  return doc.dump(2) + "\n";
}

void write_field_json(const WignerField& field, const std::string& path,
                      bool with_meta) {
  atomic_write(path, render_field_json(field, with_meta));
}

std::string render_field_ppm(const WignerField& field) {
  const int nx = field.grid.nx;
  const int np = field.grid.np;
  const double peak = field.values.abs().maxCoeff();
  std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(np) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(nx) * np * 3);
  for (int j = np - 1; j >= 0; --j) {    // top row = p_max
    for (int i = 0; i < nx; ++i) {
      double t = peak > 0.0 ? field.values(i, j) / peak : 0.0;
      t = std::clamp(t, -1.0, 1.0);
      unsigned char r = 255, g = 255, b = 255;
      if (t >= 0.0) {
        g = b = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
      } else {
        r = g = static_cast<unsigned char>(std::lround(255.0 * (1.0 + t)));
      }
      out.push_back(static_cast<char>(r));
      out.push_back(static_cast<char>(g));
      out.push_back(static_cast<char>(b));
    }
  }
  return out;
}

void write_field_ppm(const WignerField& field, const std::string& path) {
  atomic_write(path, render_field_ppm(field));
}

std::string render_curve_csv(const ScaledEnergyCurve& curve) {
  std::string out = "E_over_Eclas,pi_hbar_W\n";
  for (std::size_t i = 0; i < curve.r.size(); ++i) {
    out += format_double(curve.r[i]);
    out += ',';
    out += format_double(curve.w[i]);
    out += '\n';
  }
  return out;
}

void write_curve_csv(const ScaledEnergyCurve& curve, const std::string& path) {
  atomic_write(path, render_curve_csv(curve));
}

std::string render_wkb_compare_csv(const std::vector<WkbCompareRow>& rows) {
  std::string out = "X,P,W_exact,W_wkb,abs_diff\n";
  for (const auto& r : rows) {
    out += format_double(r.X);
    out += ',';
    out += format_double(r.P);
    out += ',';
    out += format_double(r.w_exact);
    out += ',';
    out += format_double(r.w_wkb);
    out += ',';
    out += format_double(std::abs(r.w_exact - r.w_wkb));
    out += '\n';
  }
  return out;
}

void write_wkb_compare_csv(const std::vector<WkbCompareRow>& rows,
                           const std::string& path) {
  atomic_write(path, render_wkb_compare_csv(rows));
}

std::string render_report_json(const ConvergenceReport& report, bool with_meta,
                               const std::string& grid_note) {
  require_finite(report.e_clas, "report");
  ordered_json doc;
  doc["e_clas"] = report.e_clas;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    require_finite(r.quantum, "report rows");
    require_finite(r.classical, "report rows");
    rows.push_back({{"n", r.n},
                    {"hbar", r.hbar},
                    {"functional_id", r.functional_id},
                    {"window", r.window},
                    {"quantum", r.quantum},
                    {"classical", r.classical},
                    {"abs_err", r.abs_err}});
  }
  doc["rows"] = std::move(rows);
  if (with_meta) {
    doc["metadata"] = {{"grid", grid_note},
                       {"versions", {{"oscwig", kVersion}, {"format", 1}}}};
  }
  return doc.dump(2) + "\n";
}

void write_report_json(const ConvergenceReport& report, const std::string& path,
                       bool with_meta, const std::string& grid_note) {
  atomic_write(path, render_report_json(report, with_meta, grid_note));
}

std::vector<TestFunctional> read_functionals_json(const std::string& path) {
  const auto doc = ordered_json::parse(slurp(path));
  if (!doc.is_array()) throw std::runtime_error("functionals file must be a JSON array");
  std::vector<TestFunctional> out;
  for (const auto& item : doc) {
    TestFunctional f;
    f.id = item.at("id").get<std::string>();
    f.center_x = item.at("center_x").get<double>();
    f.center_p = item.at("center_p").get<double>();
    f.sigma_x = item.at("sigma_x").get<double>();
    f.sigma_p = item.at("sigma_p").get<double>();
    f.validate();
    out.push_back(std::move(f));
  }
  if (out.empty()) throw std::runtime_error("functionals file is empty");
  return out;
}

std::vector<std::pair<int, std::complex<double>>> read_coeffs_json(
    const std::string& path) {
  const auto doc = ordered_json::parse(slurp(path));
  if (!doc.is_array()) throw std::runtime_error("coeffs file must be a JSON array");
  std::vector<std::pair<int, std::complex<double>>> out;
  for (const auto& item : doc) {
    if (!item.is_array() || item.size() != 3)
      throw std::runtime_error("coeffs entries must be [n, re, im] triples");
    out.emplace_back(item[0].get<int>(),
                     std::complex<double>(item[1].get<double>(), item[2].get<double>()));
  }
  return out;
}

}  // namespace oscwig

#include "cgwave/cli/serialize.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cgwave::cli {

namespace fs = std::filesystem;

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

// JSON has no infinities; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string dispersion_csv(const std::vector<DispersionRow>& rows, const PhysicalParams& p) {
  std::string out =
      "k [1/m],lambda_star [m^2/s^2],S0 [m^3/s^2],sqrt_lambda [m/s],sigma_over_gh2 [-],C [-],"
      "kernel_simple [bool],transversality [m^3/s^2]\n";
  for (const DispersionRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", format_double(r.k),
                       format_double(r.lambda_star), format_double(r.S0),
                       format_double(r.surface_speed), format_double(r.sigma_over_gh2),
                       format_double(r.capillary_constant), r.kernel_simple ? "true" : "false",
                       format_double(transversality_value(r.k, p)));
  }
  return out;
}

std::vector<DispersionRow> parse_dispersion_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<DispersionRow> rows;
  if (!std::getline(in, line)) throw std::runtime_error("dispersion CSV: missing header");
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw std::runtime_error("dispersion CSV line " + std::to_string(n) + ": expected 8 fields");
    }
    DispersionRow r;
    r.k = std::stod(cells[0]);
    r.lambda_star = std::stod(cells[1]);
    r.S0 = std::stod(cells[2]);
    r.surface_speed = std::stod(cells[3]);
    r.sigma_over_gh2 = std::stod(cells[4]);
    r.capillary_constant = std::stod(cells[5]);
    r.kernel_simple = cells[6] == "true";
    rows.push_back(r);
  }
  return rows;
}

Json params_json(const PhysicalParams& p) {
  return Json{{"g", p.g}, {"sigma", p.sigma}, {"h", p.h}, {"k", p.k}, {"p_atm", p.p_atm}};
}

Json kernel_report_json(const KernelReport& r, double transversality) {
  Json j;
  j["k"] = r.k;
  j["lambda_star"] = r.lambda_star;
  j["simple"] = r.simple;
  j["colliding_mode"] = r.colliding_mode ? Json(*r.colliding_mode) : Json(nullptr);
  j["closest_mode"] = r.closest_mode;
  j["min_relative_gap"] = r.min_relative_gap;
  j["scan_limit"] = r.scan_limit;
  j["tol"] = r.tol;
  j["monotone_criterion"] = r.monotone_criterion;
  j["monotone_limit_case"] = r.monotone_limit_case;
  j["criterion_indeterminate"] = r.criterion_indeterminate;
  j["sigma_over_gh2"] = number(r.sigma_over_gh2);
  j["capillary_constant"] = number(r.capillary_constant);
  j["capillary_criterion"] = r.capillary_criterion;
  j["transversality"] = transversality;
  return j;
}

Json branch_json(const Branch& b, const NewtonOptions& newton) {
  Json j;
  j["format"] = kBranchFormat;
  j["params"] = params_json(b.params);
  j["discretization"] = Json{{"n_modes", b.n_modes},
                             {"grid", b.points.empty() ? 0 : b.points.front().w.grid_size()}};
  j["newton"] = Json{{"tol", newton.tol}, {"max_iter", newton.max_iter}};
  j["k_star"] = b.k_star;
  j["lambda_star"] = b.lambda_star;
  j["transversality"] = b.transversality;
  j["status"] = Json{{"complete", b.complete}, {"stop_reason", b.stop_reason}};

  Json points = Json::array();
  for (const BranchPoint& pt : b.points) {
    Json coeffs = Json::array();
    for (double a : pt.w.cos_coeffs()) coeffs.push_back(a);
    points.push_back(Json{{"s", pt.s},
                          {"lambda", pt.lambda},
                          {"mu", pt.mu},
                          {"residual_norm", pt.residual_norm},
                          {"newton_iters", pt.newton_iters},
                          {"cos_coeffs", std::move(coeffs)}});
  }
  j["points"] = std::move(points);

  Json diags = Json::array();
  for (const PointDiagnostics& d : branch_diagnostics(b)) {
    diags.push_back(Json{{"s", d.s},
                         {"crests", d.crests},
                         {"troughs", d.troughs},
                         {"monotone", d.monotone},
                         {"evenness_defect", d.evenness_defect},
                         {"admissible", d.admissibility.passed},
                         {"min_height", d.admissibility.min_height},
                         {"min_horizontal_speed", d.admissibility.min_horizontal_speed},
                         {"min_abscissa_step", d.admissibility.min_abscissa_step},
                         {"tail_fraction", d.tail_fraction},
                         {"lambda_defect", d.lambda_defect},
                         {"shape_defect", d.shape_defect},
                         {"residual_norm", d.residual_norm}});
  }
  j["diagnostics"] = std::move(diags);
  return j;
}

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

template <class T>
T field(const Json& j, const std::string& pointer, const std::string& source) {
  const Json::json_pointer ptr(pointer);
  if (!j.contains(ptr)) throw BranchFileError(source + ": missing field " + pointer);
  try {
    return j.at(ptr).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw BranchFileError(source + ": field " + pointer + " has the wrong type");
  }
}

}  // namespace

BranchFile parse_branch_json(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw BranchFileError(source + ":" + line_column(text, e.byte > 0 ? e.byte - 1 : 0) +
                          ": JSON syntax error");
  }
  if (field<std::string>(j, "/format", source) != kBranchFormat) {
    throw BranchFileError(source + ": field /format is not " + std::string(kBranchFormat));
  }
  BranchFile f;
  Branch& b = f.branch;
  b.params.g = field<double>(j, "/params/g", source);
  b.params.sigma = field<double>(j, "/params/sigma", source);
  b.params.h = field<double>(j, "/params/h", source);
  b.params.k = field<double>(j, "/params/k", source);
  b.params.p_atm = field<double>(j, "/params/p_atm", source);
  try {
    b.params.validate();
  } catch (const std::invalid_argument& e) {
    throw BranchFileError(source + ": /params: " + e.what());
  }
  b.n_modes = field<int>(j, "/discretization/n_modes", source);
  const int grid = field<int>(j, "/discretization/grid", source);
  f.newton.tol = field<double>(j, "/newton/tol", source);
  f.newton.max_iter = field<int>(j, "/newton/max_iter", source);
  b.k_star = field<double>(j, "/k_star", source);
  b.lambda_star = field<double>(j, "/lambda_star", source);
  b.transversality = field<double>(j, "/transversality", source);
  b.complete = field<bool>(j, "/status/complete", source);
  b.stop_reason = field<std::string>(j, "/status/stop_reason", source);

  if (!j.contains("points") || !j["points"].is_array()) {
    throw BranchFileError(source + ": missing array /points");
  }
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const std::string base = "/points/" + std::to_string(i);
    BranchPoint pt;
    pt.s = field<double>(j, base + "/s", source);
    pt.lambda = field<double>(j, base + "/lambda", source);
    pt.mu = field<double>(j, base + "/mu", source);
    pt.residual_norm = field<double>(j, base + "/residual_norm", source);
    pt.newton_iters = field<int>(j, base + "/newton_iters", source);
    auto coeffs = field<std::vector<double>>(j, base + "/cos_coeffs", source);
    if (static_cast<int>(coeffs.size()) != b.n_modes + 1) {
      throw BranchFileError(source + ": " + base + "/cos_coeffs must hold n_modes + 1 values");
    }
    try {
      pt.w = PeriodicFunction(std::move(coeffs), {}, grid);
    } catch (const std::invalid_argument& e) {
      throw BranchFileError(source + ": " + base + ": " + e.what());
    }
    b.points.push_back(std::move(pt));
  }
  return f;
}

std::string profiles_csv(const Branch& b) {
  std::string out = "point [-],s [m],x [rad],X [m],Y [m]\n";
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    const SurfaceCurve c = surface_curve(b.points[i], b.params);
    for (std::size_t j = 0; j < c.x.size(); ++j) {
      out += fmt::format("{},{},{},{},{}\n", i, format_double(b.points[i].s),
                         format_double(c.x[j]), format_double(c.X[j]), format_double(c.Y[j]));
    }
  }
  return out;
}

namespace {

Json audit_json(const RefinementAudit& a) {
  return Json{{"coarse", a.coarse},       {"fine", a.fine},
              {"ratio", number(a.ratio)}, {"order", number(a.order)},
              {"roundoff_floor", a.roundoff_floor}, {"resolved", a.resolved},
              {"passed", a.passed}};
}

}  // namespace

Json validation_json(const ValidationReport& r, std::size_t point_index, const BranchPoint& point) {
  Json j;
  j["point"] = point_index;
  j["s"] = point.s;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  j["harmonicity"] = audit_json(r.harmonicity);
  j["flow_force_pde"] = audit_json(r.flow_force_pde);
  j["bed_trace"] = r.bed_trace;
  j["surface_trace"] = r.surface_trace;
  j["surface_equation"] = r.surface_equation;
  j["surface_equation_raw"] = r.surface_equation_raw;
  j["min_height"] = r.min_height;
  j["min_abscissa_step"] = r.min_abscissa_step;
  j["min_jacobian"] = r.min_jacobian;
  j["gauge_alternate_p_atm"] = r.gauge_alternate;
  j["gauge_defect"] = r.gauge_defect;
  j["residual_gauge_defect"] = r.residual_gauge_defect;
  return j;
}

std::string fields_csv(const FlowForceField& f) {
  std::string out = "x [rad],y [-],U [m],V [m],zeta [m^3/s^2],xi [m^3/s^2],e [m^3/s^2],S [m^3/s^2]\n";
  for (int m = 0; m <= f.S.my(); ++m) {
    for (int j = 0; j < f.S.mx(); ++j) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", format_double(f.S.x(j)),
                         format_double(f.S.y(m)), format_double(f.U.at(m, j)),
                         format_double(f.V.at(m, j)), format_double(f.zeta.at(m, j)),
                         format_double(f.xi.at(m, j)), format_double(f.e.at(m, j)),
                         format_double(f.S.at(m, j)));
    }
  }
  return out;
}

}  // namespace cgwave::cli

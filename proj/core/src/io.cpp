#include "rigidlens/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rigidlens {

namespace {

using Json = nlohmann::ordered_json;

Json num_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(v)) return Json("nan");
  return Json(v);
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const Json& a, const char* what) {
  if (!a.is_array()) throw ParseError(std::string(what) + ": expected an array");
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw ParseError(std::string(what) + ": expected numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

Json poly_to_json(const MultiPoly& p) {
  Json j;
  j["n"] = p.n();
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exps"] = m.exps;
    t["coef"] = c;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MultiPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
    throw ParseError("polynomial: expected {\"n\", \"terms\"}");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 0)
    throw ParseError("polynomial: n must be a non-negative integer");
  const int n = j["n"].get<int>();
  if (!j["terms"].is_array()) throw ParseError("polynomial: terms must be an array");
  MultiPoly p(n);
  std::set<std::vector<int>> seen;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coef"))
      throw ParseError("polynomial term: expected {\"exps\", \"coef\"}");
    if (!t["exps"].is_array() || t["exps"].size() != static_cast<std::size_t>(n))
      throw ParseError("polynomial term: exps must be a length-n array");
    std::vector<int> exps;
    for (const auto& e : t["exps"]) {
      if (!e.is_number_integer() || e.get<int>() < 0)
        throw ParseError("polynomial term: exponents must be non-negative integers");
      exps.push_back(e.get<int>());
    }
    if (!t["coef"].is_number())
      throw ParseError("polynomial term: coef must be a number");
    if (!seen.insert(exps).second)
      throw ParseError("polynomial: duplicate exponent vector");
    p.add_term(Monomial(exps), t["coef"].get<double>());
  }
  return p;
}

Json pencil_to_json(const Pencil& P) {
  Json j;
  j["n"] = P.n();
  j["N"] = P.size();
  Json mats = Json::array();
  for (int k = 0; k < P.n(); ++k) {
    Json m = Json::array();
    for (int r = 0; r < P.size(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < P.size(); ++c) row.push_back(P.matrix(k)(r, c));
      m.push_back(std::move(row));
    }
    mats.push_back(std::move(m));
  }
  j["matrices"] = std::move(mats);
  return j;
}

Pencil pencil_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("N") ||
      !j.contains("matrices"))
    throw ParseError("pencil: expected {\"n\", \"N\", \"matrices\"}");
  if (!j["n"].is_number_integer() || !j["N"].is_number_integer())
    throw ParseError("pencil: n and N must be integers");
  const int n = j["n"].get<int>();
  const int N = j["N"].get<int>();
  if (n < 0 || N < 0) throw ParseError("pencil: sizes must be non-negative");
  if (!j["matrices"].is_array() || j["matrices"].size() != static_cast<std::size_t>(n))
    throw ParseError("pencil: expected n matrices");
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& m : j["matrices"]) {
    if (!m.is_array() || m.size() != static_cast<std::size_t>(N))
      throw ParseError("pencil: matrix must have N rows");
    Eigen::MatrixXd mat(N, N);
    for (int r = 0; r < N; ++r) {
      const auto& row = m[r];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(N))
        throw ParseError("pencil: matrix row must have N entries");
      for (int c = 0; c < N; ++c) {
        if (!row[c].is_number()) throw ParseError("pencil: entries must be numbers");
        mat(r, c) = row[c].get<double>();
      }
    }
    mats.push_back(std::move(mat));
  }
  if (n == 0) return Pencil(0, N);
  return Pencil(std::move(mats));
}

Json parse(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

}  // namespace

MultiPoly poly_from_json_string(const std::string& text) {
  return poly_from_json(parse(text, "polynomial"));
}

std::string poly_to_json_string(const MultiPoly& p) {
  return poly_to_json(p).dump(2);
}

MultiPoly load_poly(const std::string& path) {
  return poly_from_json_string(read_text_file(path));
}

void save_poly(const MultiPoly& p, const std::string& path) {
  write_text_file(path, poly_to_json_string(p) + "\n");
}

Pencil pencil_from_json_string(const std::string& text) {
  return pencil_from_json(parse(text, "pencil"));
}

std::string pencil_to_json_string(const Pencil& P) {
  return pencil_to_json(P).dump(2);
}

Pencil load_pencil(const std::string& path) {
  return pencil_from_json_string(read_text_file(path));
}

void save_pencil(const Pencil& P, const std::string& path) {
  write_text_file(path, pencil_to_json_string(P) + "\n");
}

std::string cover_to_json_string(const TangentCover& cover) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "tangent_cover";
  Json records = Json::array();
  for (std::size_t i = 0; i < cover.forms.size(); ++i) {
    Json r;
    r["point"] = vector_to_json(cover.base_points[i]);
    r["gradient"] = vector_to_json(cover.gradients[i]);
    r["form"] = {{"constant", 1.0},
                 {"gradient", vector_to_json(cover.forms[i].gradient)}};
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  j["blocks"] = cover.blocks;
  j["skipped_through_origin"] = cover.skipped_through_origin;
  j["max_base_point_residual"] = cover.max_base_point_residual;
  j["probe_coverage"] = cover.probe_coverage;
  return j.dump(2);
}

TangentCover cover_from_json_string(const std::string& text) {
  const Json j = parse(text, "cover");
  if (!j.contains("records") || !j["records"].is_array())
    throw ParseError("cover: expected a records array");
  TangentCover cover;
  for (const auto& r : j["records"]) {
    cover.base_points.push_back(vector_from_json(r.at("point"), "cover point"));
    cover.gradients.push_back(vector_from_json(r.at("gradient"), "cover gradient"));
    cover.forms.push_back(
        LinearForm{vector_from_json(r.at("form").at("gradient"), "cover form")});
  }
  if (j.contains("blocks"))
    cover.blocks = j["blocks"].get<std::vector<std::vector<int>>>();
  if (j.contains("skipped_through_origin"))
    cover.skipped_through_origin = j["skipped_through_origin"].get<int>();
  return cover;
}

std::string rz_verdict_to_json_string(const RzVerdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "rz_verdict";
  j["is_rz"] = v.is_rz;
  j["rays_checked"] = v.rays_checked;
  j["tol"] = v.tol;
  if (v.witness) {
    Json w;
    w["direction"] = vector_to_json(v.witness->first.direction());
    w["root"] = {{"re", v.witness->second.real()}, {"im", v.witness->second.imag()}};
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(2);
}

std::string radial_slices_csv(const std::vector<RadialSlice>& slices) {
  std::ostringstream os;
  if (slices.empty()) return "";
  const int n = slices.front().direction.n();
  for (int i = 0; i < n; ++i) os << "dir_" << i << ",";
  os << "rcs_radius,ovaloid_radii\n";
  for (const auto& s : slices) {
    for (int i = 0; i < n; ++i) os << fmt_double(s.direction.direction()[i]) << ",";
    os << fmt_double(s.rcs_radius) << ",";
    for (std::size_t i = 0; i < s.ovaloid_radii.size(); ++i) {
      if (i) os << ";";
      os << fmt_double(s.ovaloid_radii[i]);
    }
    os << "\n";
  }
  return os.str();
}

std::string fit_report_to_json_string(const FitReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "fit_report";
  j["converged"] = report.converged;
  j["final_objective"] = num_or_inf(report.final_objective);
  j["iterations"] = report.iterations;
  j["final_pencil"] = pencil_to_json(report.final_pencil);
  j["cofactor"] = report.cofactor ? poly_to_json(*report.cofactor) : Json(nullptr);
  j["cofactor_residual"] =
      report.cofactor_residual ? num_or_inf(*report.cofactor_residual) : Json(nullptr);
  return j.dump(2);
}

std::string path_to_json_string(const DeformationPath& path) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "deformation_path";
  Json snaps = Json::array();
  for (const auto& s : path.snapshots) {
    Json e;
    e["t"] = s.t;
    e["objective"] = num_or_inf(s.objective);
    e["pencil"] = pencil_to_json(s.pencil);
    snaps.push_back(std::move(e));
  }
  j["snapshots"] = std::move(snaps);
  return j.dump(2);
}

std::string monitor_report_csv(const MonitorReport& report) {
  std::ostringstream os;
  os << "t,det_rz,contains,min_gap,worst_direction\n";
  for (const auto& a : report.audits) {
    os << fmt_double(a.t) << "," << (a.det_rz ? 1 : 0) << ","
       << (a.contains ? 1 : 0) << "," << fmt_double(a.min_gap) << ",";
    if (a.worst_ray) {
      const auto& d = a.worst_ray->direction();
      for (int i = 0; i < d.size(); ++i) {
        if (i) os << " ";
        os << fmt_double(d[i]);
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string monitor_report_to_json_string(const MonitorReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "monitor_report";
  j["all_snapshots_pass"] = report.all_snapshots_pass;
  j["terminal_equality"] = report.terminal_equality;
  j["terminal_max_abs_gap"] = num_or_inf(report.terminal_max_abs_gap);
  Json audits = Json::array();
  for (const auto& a : report.audits) {
    Json e;
    e["t"] = a.t;
    e["det_rz"] = a.det_rz;
    e["contains"] = a.contains;
    e["min_gap"] = num_or_inf(a.min_gap);
    e["worst_direction"] =
        a.worst_ray ? vector_to_json(a.worst_ray->direction()) : Json(nullptr);
    audits.push_back(std::move(e));
  }
  j["audits"] = std::move(audits);
  return j.dump(2);
}

std::string verification_report_to_json_string(const VerificationReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verification_report";
  j["pass"] = report.pass;
  j["max_abs_gap"] = num_or_inf(report.max_abs_gap);
  j["contains_p_in_pencil"] = report.contains_p_in_pencil;
  j["contains_pencil_in_p"] = report.contains_pencil_in_p;
  j["det_rz"] = report.det_rz;
  j["cofactor_route"] = report.cofactor_exact_route ? "exact" : "ray-sampled";
  j["cofactor_residual"] = num_or_inf(report.cofactor_residual);
  j["cofactor"] = report.cofactor ? poly_to_json(*report.cofactor) : Json(nullptr);
  j["tol"] = report.tol;
  j["tol_div"] = report.tol_div;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json e;
    e["direction"] = vector_to_json(r.direction.direction());
    e["rcs_radius"] = num_or_inf(r.rcs_radius);
    e["spectrahedral_radius"] = num_or_inf(r.spectrahedral_radius);
    e["gap"] = num_or_inf(r.gap);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

std::string verification_report_csv(const VerificationReport& report) {
  std::ostringstream os;
  if (report.rows.empty()) return "";
  const int n = report.rows.front().direction.n();
  os << "row";
  for (int i = 0; i < n; ++i) os << ",dir_" << i;
  os << ",rcs_radius,spectrahedral_radius,gap\n";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const auto& row = report.rows[r];
    os << r;
    for (int i = 0; i < n; ++i) os << "," << fmt_double(row.direction.direction()[i]);
    os << "," << fmt_double(row.rcs_radius) << ","
       << fmt_double(row.spectrahedral_radius) << "," << fmt_double(row.gap) << "\n";
  }
  return os.str();
}

namespace {

std::string svg_point(double x, double y) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
  return buf;
}

}  // namespace

std::string radius_profile_svg(const VerificationReport& report, int n) {
  constexpr int W = 640, H = 640;
  const double cx = W / 2.0, cy = H / 2.0;

  double max_r = 0.0;
  for (const auto& row : report.rows) {
    if (std::isfinite(row.rcs_radius)) max_r = std::max(max_r, row.rcs_radius);
    if (std::isfinite(row.spectrahedral_radius))
      max_r = std::max(max_r, row.spectrahedral_radius);
  }
  if (max_r <= 0.0) max_r = 1.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (n == 2) {
    const double scale = 260.0 / max_r;
    for (int g = 1; g <= 4; ++g) {
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\""
         << 260.0 * g / 4 << "\" fill=\"none\" stroke=\"#ddd\"/>\n";
    }
    os << "<line x1=\"0\" y1=\"" << cy << "\" x2=\"" << W << "\" y2=\"" << cy
       << "\" stroke=\"#ddd\"/>\n<line x1=\"" << cx << "\" y1=\"0\" x2=\"" << cx
       << "\" y2=\"" << H << "\" stroke=\"#ddd\"/>\n";
    const auto polar_path = [&](bool use_rcs, const char* color, bool dashed) {
      // Sort the oriented rows by angle so the profile closes into a loop.
      std::vector<std::pair<double, double>> pts;  // angle, radius
      for (const auto& row : report.rows) {
        const double r = use_rcs ? row.rcs_radius : row.spectrahedral_radius;
        if (!std::isfinite(r)) continue;
        const auto& d = row.direction.direction();
        pts.emplace_back(std::atan2(d[1], d[0]), r);
      }
      std::sort(pts.begin(), pts.end());
      if (pts.empty()) return;
      os << "<polygon points=\"";
      for (const auto& [th, r] : pts)
        os << svg_point(cx + scale * r * std::cos(th), cy - scale * r * std::sin(th));
      os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (dashed) os << " stroke-dasharray=\"6 4\"";
      os << "/>\n";
    };
    polar_path(true, "#1f6fb2", false);
    polar_path(false, "#c23b22", true);
  } else {
    const double scale = (H - 80.0) / max_r;
    const double step = report.rows.empty() ? 1.0 : (W - 80.0) / report.rows.size();
    const auto line_path = [&](bool use_rcs, const char* color, bool dashed) {
      os << "<polyline points=\"";
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const double r = use_rcs ? report.rows[i].rcs_radius
                                 : report.rows[i].spectrahedral_radius;
        if (!std::isfinite(r)) continue;
        os << svg_point(40.0 + step * i, H - 40.0 - scale * r);
      }
      os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (dashed) os << " stroke-dasharray=\"6 4\"";
      os << "/>\n";
    };
    line_path(true, "#1f6fb2", false);
    line_path(false, "#c23b22", true);
  }

  os << "<text x=\"12\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\" "
        "fill=\"#1f6fb2\">rcs radius (target)</text>\n";
  os << "<text x=\"12\" y=\"38\" font-family=\"sans-serif\" font-size=\"13\" "
        "fill=\"#c23b22\">spectrahedral radius (pencil)</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace rigidlens

// rigidlens: verify real-zero polynomials, measure root-based closeness,
// build tangent covers, deform monic symmetric pencils toward determinantal
// multiples, and check the resulting spectrahedral radius profiles.
//
// Exit codes: 0 success, 2 negative verdict (non-RZ input, non-converged
// fit, failed verification), 1 operational error (I/O, parse, bad usage).

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rigidlens/deform.hpp"
#include "rigidlens/io.hpp"
#include "rigidlens/pencil.hpp"
#include "rigidlens/rzgeom.hpp"
#include "rigidlens/tangentcover.hpp"
#include "rigidlens/veriglc.hpp"

namespace rl = rigidlens;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

rl::MultiPoly load_comonic(const std::string& path, bool* normalized = nullptr) {
  rl::MultiPoly p = rl::load_poly(path);
  if (normalized) *normalized = false;
  if (!p.is_comonic(1e-12)) {
    p = rl::comonic_normalize(p);  // throws ZeroAtOrigin when p(0) = 0
    if (normalized) *normalized = true;
  }
  return p;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content << (content.ends_with("\n") ? "" : "\n");
  else
    rl::write_text_file(out, content.ends_with("\n") ? content : content + "\n");
}

Json direction_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// ---------------------------------------------------------------- rz-check

int cmd_rz_check(const std::string& poly_path, int ray_count, double tol,
                 const std::string& out) {
  const rl::MultiPoly p = load_comonic(poly_path);
  const auto rays = rl::half_sphere_rays(p.n(), ray_count);
  const auto verdict = rl::is_rz(p, rays, tol);
  emit(out, rl::rz_verdict_to_json_string(verdict));
  if (!verdict.is_rz && verdict.witness) {
    std::cerr << "not RZ: witness ray (";
    const auto& d = verdict.witness->first.direction();
    for (int i = 0; i < d.size(); ++i) std::cerr << (i ? ", " : "") << d[i];
    std::cerr << ") has root " << verdict.witness->second.real() << " + "
              << verdict.witness->second.imag() << "i\n";
  }
  return verdict.is_rz ? kExitOk : kExitNegative;
}

// --------------------------------------------------------------------- rcs

int cmd_rcs(const std::string& poly_path, int ray_count, double tol,
            const std::string& out) {
  const rl::MultiPoly p = load_comonic(poly_path);
  std::vector<rl::RadialSlice> slices;
  int infinite = 0;
  for (const auto& a : rl::half_sphere_rays(p.n(), ray_count)) {
    for (const rl::Ray& dir : {a, a.opposite()}) {
      slices.push_back(rl::radial_slice(p, dir, tol));
      if (std::isinf(slices.back().rcs_radius)) ++infinite;
    }
  }
  emit(out, rl::radial_slices_csv(slices));
  if (infinite > 0)
    std::cerr << "warning: " << infinite
              << " semilines never meet the zero set (non-compact slice)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- distance

int cmd_distance(const std::string& p_path, const std::string& q_path,
                 const std::string& mode, double u, int ray_count, double tol,
                 const std::string& out) {
  const rl::MultiPoly p = load_comonic(p_path);
  const rl::MultiPoly q = load_comonic(q_path);
  rl::MetricConfig cfg;
  cfg.u = u;
  cfg.tol = tol;
  if (mode == "coeff") cfg.mode = rl::DistanceMode::Coefficient;
  else if (mode == "root") cfg.mode = rl::DistanceMode::RootOrdered;
  else if (mode == "half") cfg.mode = rl::DistanceMode::RootOrderedHalf;
  else if (mode == "radial") cfg.mode = rl::DistanceMode::RadialNearest;
  else throw rl::Error("unknown distance mode: " + mode);
  if (cfg.mode != rl::DistanceMode::Coefficient)
    cfg.rays = rl::sample_half_sphere(p.n(), ray_count);
  const double value = rl::distance(p, q, cfg);
  std::cout << std::setprecision(17) << value << "\n";
  if (!out.empty()) {
    Json j;
    j["schema_version"] = rl::kSchemaVersion;
    j["kind"] = "distance_report";
    j["mode"] = mode;
    j["u"] = u;
    j["rays"] = ray_count;
    j["value"] = value;
    rl::write_text_file(out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ------------------------------------------------------------------- cover

int cmd_cover(const std::string& poly_path, int ray_count, int block, double tol,
              const std::string& out) {
  const rl::MultiPoly p = load_comonic(poly_path);
  const auto cover =
      rl::build_cover(p, rl::half_sphere_rays(p.n(), ray_count), block, tol);
  emit(out, rl::cover_to_json_string(cover));
  if (cover.skipped_through_origin > 0)
    std::cerr << "warning: skipped " << cover.skipped_through_origin
              << " zero points whose tangent passes through the origin\n";
  return kExitOk;
}

// ------------------------------------------------------------------ pencil

int cmd_pencil_det(const std::string& pencil_path, int cap,
                   const std::string& out) {
  const rl::Pencil P = rl::load_pencil(pencil_path);
  emit(out, rl::poly_to_json_string(rl::det_poly(P, cap)));
  return kExitOk;
}

int cmd_pencil_radius(const std::string& pencil_path, int ray_count,
                      const std::string& out) {
  const rl::Pencil P = rl::load_pencil(pencil_path);
  std::ostringstream os;
  os << "dir";
  for (int i = 0; i < P.n(); ++i) os << ",dir_" << i;
  os << ",spectrahedral_radius\n";
  int row = 0;
  for (const auto& a : rl::half_sphere_rays(P.n(), ray_count)) {
    for (const rl::Ray& dir : {a, a.opposite()}) {
      os << row++;
      for (int i = 0; i < P.n(); ++i) os << "," << dir.direction()[i];
      const double r = rl::spectrahedral_radius(P, dir);
      os << "," << (std::isinf(r) ? "inf" : std::to_string(r)) << "\n";
    }
  }
  emit(out, os.str());
  return kExitOk;
}

// --------------------------------------------------------------------- fit

int cmd_fit(const std::string& poly_path, const std::string& init_path,
            int ray_count, int max_iters, std::uint64_t seed, double tol,
            const std::string& out) {
  const rl::MultiPoly p = load_comonic(poly_path);
  const rl::Pencil init = rl::load_pencil(init_path);
  rl::FitConfig cfg;
  cfg.rays = rl::sample_half_sphere(p.n(), ray_count);
  cfg.max_iters = max_iters;
  cfg.seed = seed;
  cfg.tol = tol;
  const auto result = rl::fit_pencil(p, init, cfg);

  emit(out, rl::fit_report_to_json_string(result.report));
  if (!out.empty()) {
    const std::filesystem::path base(out);
    const auto stem = (base.parent_path() / base.stem()).string();
    rl::write_text_file(stem + ".path.json",
                        rl::path_to_json_string(result.path) + "\n");
    const auto audit = rl::monitor_path(result.path, p, cfg.rays, 1e-6);
    rl::write_text_file(stem + ".audit.csv", rl::monitor_report_csv(audit));
  }
  std::cerr << (result.report.converged ? "converged" : "not converged")
            << ": objective " << result.report.final_objective << " after "
            << result.report.iterations << " iterations\n";
  return result.report.converged ? kExitOk : kExitNegative;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& poly_path, const std::string& pencil_path,
               int ray_count, double tol, double tol_div, const std::string& out,
               const std::string& plot) {
  const rl::MultiPoly p = load_comonic(poly_path);
  const rl::Pencil P = rl::load_pencil(pencil_path);
  const auto rays = rl::sample_half_sphere(p.n(), ray_count);
  const auto report = rl::verify_representation(p, P, rays, tol, tol_div);
  emit(out, rl::verification_report_to_json_string(report));
  if (!out.empty()) {
    const std::filesystem::path base(out);
    const auto stem = (base.parent_path() / base.stem()).string();
    rl::write_text_file(stem + ".csv", rl::verification_report_csv(report));
  }
  if (!plot.empty())
    rl::write_text_file(plot, rl::radius_profile_svg(report, p.n()));
  std::cerr << (report.pass ? "pass" : "fail") << ": max |gap| "
            << report.max_abs_gap << ", cofactor residual "
            << report.cofactor_residual << "\n";
  return report.pass ? kExitOk : kExitNegative;
}

// -------------------------------------------------------------- gen-corpus

int cmd_gen_corpus(int n, int size, int degree, int count, std::uint64_t seed,
                   const std::string& out_dir, int cap) {
  if (size <= 0 && degree > 0) size = degree;  // det degree equals N generically
  if (size <= 0) throw rl::Error("gen-corpus: give --size or --degree");
  if (size > cap)
    throw rl::Error("gen-corpus: size " + std::to_string(size) +
                    " exceeds the exact-determinant cap " + std::to_string(cap));
  std::filesystem::create_directories(out_dir);
  const auto probe = rl::half_sphere_rays(n, 64);
  for (int i = 0; i < count; ++i) {
    const rl::Pencil P = rl::random_compact_pencil(n, size, seed + i, probe);
    const rl::MultiPoly det = rl::det_poly(P, cap);
    char name[64];
    std::snprintf(name, sizeof(name), "pencil_%03d.json", i);
    rl::save_pencil(P, (std::filesystem::path(out_dir) / name).string());
    std::snprintf(name, sizeof(name), "poly_%03d.json", i);
    rl::save_poly(det, (std::filesystem::path(out_dir) / name).string());
  }
  std::cerr << "wrote " << count << " pencil/polynomial pairs to " << out_dir
            << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- pipeline

int cmd_pipeline(const std::string& poly_path, int ray_count, int cover_rays,
                 int block, int max_iters, std::uint64_t seed, double tol,
                 const std::string& out, const std::string& plot) {
  Json report;
  report["schema_version"] = rl::kSchemaVersion;
  report["kind"] = "pipeline_report";
  Json warnings = Json::array();

  const auto abort_stage = [&](const std::string& stage, const std::string& why,
                               int code) {
    report["failed_stage"] = stage;
    report["error"] = why;
    report["pass"] = false;
    report["warnings"] = warnings;
    emit(out, report.dump(2));
    std::cerr << "pipeline aborted at " << stage << ": " << why << "\n";
    return code;
  };

  bool normalized = false;
  const rl::MultiPoly p = load_comonic(poly_path, &normalized);
  if (normalized) warnings.push_back("input polynomial normalized to be comonic");
  const int n = p.n();

  // Stage: rz-check.
  const auto all_rays = rl::half_sphere_rays(n, ray_count);
  const auto verdict = rl::is_rz(p, all_rays, tol);
  {
    Json j;
    j["is_rz"] = verdict.is_rz;
    j["rays_checked"] = verdict.rays_checked;
    if (verdict.witness)
      j["witness_direction"] = direction_json(verdict.witness->first.direction());
    report["rz_check"] = std::move(j);
  }
  if (!verdict.is_rz)
    return abort_stage("rz-check", "target polynomial is not sampled-RZ",
                       kExitNegative);

  // Stage: radial profile; rays that never meet the zero set are excluded
  // from the fit and verification sweeps and surfaced as warnings.
  std::vector<rl::Ray> finite_rays;
  int excluded = 0;
  for (const auto& a : all_rays) {
    const auto [rp, rn] = rl::rcs_radii_both(p, a, tol);
    if (std::isinf(rp) || std::isinf(rn)) {
      ++excluded;
    } else {
      finite_rays.push_back(a);
    }
  }
  if (excluded > 0) {
    warnings.push_back(std::to_string(excluded) +
                       " rays with infinite radius excluded (non-compact slice)");
  }
  if (finite_rays.empty())
    return abort_stage("rcs", "no sampled ray meets the zero set", kExitNegative);
  rl::RaySample rays;
  rays.directions = std::move(finite_rays);
  rays.weights = rl::finite_sample_weights(rays.directions);

  // Stage: cover.
  rl::TangentCover cover;
  try {
    cover = rl::build_cover(p, rl::half_sphere_rays(n, cover_rays), block, tol);
  } catch (const rl::Error& e) {
    return abort_stage("cover", e.what(), kExitError);
  }
  if (cover.skipped_through_origin > 0)
    warnings.push_back(std::to_string(cover.skipped_through_origin) +
                       " tangent-through-origin points skipped in the cover");
  {
    Json j;
    j["forms"] = cover.forms.size();
    j["blocks"] = cover.blocks.size();
    j["max_base_point_residual"] = cover.max_base_point_residual;
    j["probe_coverage"] = cover.probe_coverage;
    report["cover"] = std::move(j);
  }
  if (static_cast<int>(cover.forms.size()) < p.degree())
    return abort_stage("cover",
                       "cover has fewer forms than the target degree; raise "
                       "--cover-rays",
                       kExitError);

  // Stage: glue the per-block diagonal pencils into one direct sum.
  rl::Pencil glued(n, 0);
  for (const auto& blk : cover.blocks) {
    std::vector<rl::LinearForm> forms;
    for (int idx : blk) forms.push_back(cover.forms[idx]);
    glued = rl::direct_sum(glued, rl::diag_pencil(forms, n));
  }
  report["glue"] = Json{{"pencil_size", glued.size()}, {"blocks", cover.blocks.size()}};

  // Stage: fit.
  rl::FitConfig fit_cfg;
  fit_cfg.rays = rays;
  fit_cfg.max_iters = max_iters;
  fit_cfg.seed = seed;
  fit_cfg.tol = tol;
  const auto fit = rl::fit_pencil(p, glued, fit_cfg);
  {
    Json j;
    j["converged"] = fit.report.converged;
    j["final_objective"] = fit.report.final_objective;
    j["iterations"] = fit.report.iterations;
    j["snapshots"] = fit.path.snapshots.size();
    if (fit.report.cofactor_residual)
      j["cofactor_residual"] = *fit.report.cofactor_residual;
    report["fit"] = std::move(j);
  }
  if (!fit.report.converged)
    return abort_stage("fit", "deformation did not reach the objective tolerance",
                       kExitNegative);

  // Stage: monitor.
  const auto audit = rl::monitor_path(fit.path, p, rays, 1e-6);
  {
    Json j;
    j["all_snapshots_pass"] = audit.all_snapshots_pass;
    j["terminal_equality"] = audit.terminal_equality;
    j["terminal_max_abs_gap"] = audit.terminal_max_abs_gap;
    j["snapshots_audited"] = audit.audits.size();
    report["monitor"] = std::move(j);
  }

  // Stage: verify.
  const auto verification = rl::verify_representation(
      p, fit.report.final_pencil, rays, 1e-6, 1e-6, rl::kDetCap);
  {
    Json j;
    j["pass"] = verification.pass;
    j["max_abs_gap"] = std::isinf(verification.max_abs_gap)
                           ? Json("inf")
                           : Json(verification.max_abs_gap);
    j["cofactor_route"] =
        verification.cofactor_exact_route ? "exact" : "ray-sampled";
    j["cofactor_residual"] = verification.cofactor_residual;
    j["det_rz"] = verification.det_rz;
    report["verify"] = std::move(j);
  }

  const bool pass =
      verification.pass && audit.all_snapshots_pass && audit.terminal_equality;
  report["pass"] = pass;
  report["warnings"] = warnings;
  emit(out, report.dump(2));
  if (!out.empty()) {
    const std::filesystem::path base(out);
    const auto stem = (base.parent_path() / base.stem()).string();
    rl::write_text_file(stem + ".path.json",
                        rl::path_to_json_string(fit.path) + "\n");
    rl::write_text_file(stem + ".audit.csv", rl::monitor_report_csv(audit));
    rl::write_text_file(stem + ".verify.csv",
                        rl::verification_report_csv(verification));
  }
  if (!plot.empty())
    rl::write_text_file(plot, rl::radius_profile_svg(verification, n));
  std::cerr << "pipeline " << (pass ? "pass" : "fail") << "\n";
  return pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rigidlens: real-zero polynomial geometry, root-based closeness "
      "measures, and determinantal pencil deformation"};
  app.require_subcommand(1);

  // Shared option storage; each subcommand binds the flags it uses.
  std::string poly_path, q_path, pencil_path, init_path, out, plot, out_dir;
  std::string mode = "radial";
  int ray_count = rl::kDefaultRayCount;
  int cover_rays = 1;
  int block = 0;
  int max_iters = 2000;
  int count = 1;
  int n_vars = 2;
  int size = 0;
  int degree = 0;
  double u = 1.0;
  double tol = rl::kRealSnapTol;
  double tol_div = 1e-8;
  std::uint64_t seed = 1;

  auto* rz = app.add_subcommand("rz-check", "sampled real-zero check");
  rz->add_option("poly", poly_path, "polynomial JSON file")->required();
  rz->add_option("--rays", ray_count, "half-sphere sample size")
      ->capture_default_str();
  rz->add_option("--tol", tol, "real-snap tolerance")->capture_default_str();
  rz->add_option("--out", out, "verdict JSON path (stdout if omitted)");

  auto* rcs = app.add_subcommand("rcs", "radial slice dump (CSV)");
  rcs->add_option("poly", poly_path)->required();
  rcs->add_option("--rays", ray_count)->capture_default_str();
  rcs->add_option("--tol", tol)->capture_default_str();
  rcs->add_option("--out", out, "CSV path (stdout if omitted)");

  auto* dist = app.add_subcommand("distance", "closeness measures");
  dist->add_option("p", poly_path)->required();
  dist->add_option("q", q_path)->required();
  dist->add_option("--mode", mode, "coeff|root|half|radial")
      ->capture_default_str();
  dist->add_option("--u", u, "exponent (>= 1)")->capture_default_str();
  dist->add_option("--rays", ray_count)->capture_default_str();
  dist->add_option("--tol", tol)->capture_default_str();
  dist->add_option("--out", out, "report JSON path");

  auto* cover = app.add_subcommand("cover", "tangent cover construction");
  cover->add_option("poly", poly_path)->required();
  cover->add_option("--rays", ray_count)->capture_default_str();
  cover->add_option("--block", block, "forms per diagonal block (default: all)");
  cover->add_option("--tol", tol)->capture_default_str();
  cover->add_option("--out", out, "cover JSON path (stdout if omitted)");

  auto* pencil = app.add_subcommand("pencil", "pencil utilities");
  pencil->require_subcommand(1);
  auto* pdet = pencil->add_subcommand("det", "exact determinant polynomial");
  pdet->add_option("pencil", pencil_path)->required();
  pdet->add_option("--out", out, "polynomial JSON path (stdout if omitted)");
  auto* prad = pencil->add_subcommand("radius", "spectrahedral radius sweep");
  prad->add_option("pencil", pencil_path)->required();
  prad->add_option("--rays", ray_count)->capture_default_str();
  prad->add_option("--out", out, "CSV path (stdout if omitted)");

  auto* fit = app.add_subcommand("fit", "deform a pencil toward a target");
  fit->add_option("--poly", poly_path, "target polynomial JSON")->required();
  fit->add_option("--init", init_path, "initial pencil JSON")->required();
  fit->add_option("--rays", ray_count)->capture_default_str();
  fit->add_option("--max-iters", max_iters)->capture_default_str();
  fit->add_option("--seed", seed)->capture_default_str();
  fit->add_option("--tol", tol)->capture_default_str();
  fit->add_option("--out", out,
                  "report JSON path; also writes <out>.path.json and "
                  "<out>.audit.csv");

  auto* verify = app.add_subcommand("verify", "radius-profile verification");
  verify->add_option("--poly", poly_path)->required();
  verify->add_option("--pencil", pencil_path)->required();
  verify->add_option("--rays", ray_count)->capture_default_str();
  verify->add_option("--tol", tol, "radius gap tolerance")
      ->default_val(1e-6)
      ->capture_default_str();
  verify->add_option("--tol-div", tol_div, "cofactor residual tolerance")
      ->capture_default_str();
  verify->add_option("--out", out, "report JSON path; also writes <out>.csv");
  verify->add_option("--plot", plot, "radius profile SVG path");

  auto* gen = app.add_subcommand("gen-corpus", "random compact pencil corpus");
  gen->add_option("--n", n_vars, "variable count")->capture_default_str();
  gen->add_option("--size", size, "pencil size N");
  gen->add_option("--degree", degree, "target degree (sets N when --size absent)");
  gen->add_option("--count", count)->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  auto* pipe = app.add_subcommand(
      "pipeline", "rz-check -> cover -> glue -> fit -> monitor -> verify");
  pipe->add_option("--poly", poly_path)->required();
  pipe->add_option("--rays", ray_count, "metric/verification sample size")
      ->capture_default_str();
  pipe->add_option("--cover-rays", cover_rays, "rays used to seed the cover")
      ->capture_default_str();
  pipe->add_option("--block", block, "forms per diagonal block (default: all)");
  pipe->add_option("--max-iters", max_iters)->capture_default_str();
  pipe->add_option("--seed", seed)->capture_default_str();
  pipe->add_option("--tol", tol)->capture_default_str();
  pipe->add_option("--out", out, "consolidated report JSON path");
  pipe->add_option("--plot", plot, "radius profile SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rz->parsed()) return cmd_rz_check(poly_path, ray_count, tol, out);
    if (rcs->parsed()) return cmd_rcs(poly_path, ray_count, tol, out);
    if (dist->parsed())
      return cmd_distance(poly_path, q_path, mode, u, ray_count, tol, out);
    if (cover->parsed()) {
      const int b = block > 0 ? block : std::numeric_limits<int>::max();
      return cmd_cover(poly_path, ray_count, b, tol, out);
    }
    if (pdet->parsed()) return cmd_pencil_det(pencil_path, rl::kDetCap, out);
    if (prad->parsed()) return cmd_pencil_radius(pencil_path, ray_count, out);
    if (fit->parsed())
      return cmd_fit(poly_path, init_path, ray_count, max_iters, seed, tol, out);
    if (verify->parsed())
      return cmd_verify(poly_path, pencil_path, ray_count, tol, tol_div, out, plot);
    if (gen->parsed())
      return cmd_gen_corpus(n_vars, size, degree, count, seed, out_dir,
                            rl::kDetCap);
    if (pipe->parsed()) {
      const int b = block > 0 ? block : std::numeric_limits<int>::max();
      return cmd_pipeline(poly_path, ray_count, cover_rays, b, max_iters, seed,
                          tol, out, plot);
    }
  } catch (const rl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

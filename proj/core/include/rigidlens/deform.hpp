#ifndef RIGIDLENS_DEFORM_HPP
#define RIGIDLENS_DEFORM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rigidlens/metrics.hpp"
#include "rigidlens/pencil.hpp"
#include "rigidlens/rzgeom.hpp"

namespace rigidlens {

enum class Optimizer { CoordinateDescentFD, Simplex };

struct FitConfig {
  RaySample rays;
  int max_iters = 2000;  // coordinate cycles / simplex iterations
  double step_init = 0.25;
  double tol_objective = 1e-9;
  double tol_step = 1e-11;
  std::uint64_t seed = 1;
  Optimizer optimizer = Optimizer::CoordinateDescentFD;
  double tol = kRealSnapTol;
  int det_cap = kDetCap;  // cofactor extraction is skipped above this
};

/// One accepted state along the deformation. t is the acceptance fraction
/// in [0,1] (the homotopy parameter is abstract; any monotone
/// reparametrization serves the audit).
struct PathSnapshot {
  double t = 0.0;
  Pencil pencil{0, 0};
  double objective = 0.0;
};

struct DeformationPath {
  std::vector<PathSnapshot> snapshots;
};

struct FitReport {
  Pencil final_pencil{0, 0};
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<MultiPoly> cofactor;
  std::optional<double> cofactor_residual;
};

struct FitResult {
  FitReport report;
  DeformationPath path;
};

/// Radial nearest-root mismatch between p and the pencil's eigenvalue roots:
/// weighted over the sampled lines, every root of p's restriction (complex
/// ones included, so non-RZ targets stay measurable and bounded away from
/// zero) contributes its plane distance to the nearest pencil root on that
/// line. When a line carries no pencil roots at all, each unmatched root
/// contributes the cap 10*(largest sampled radius of p) instead, keeping the
/// objective finite. Never expands symbolic determinants.
double fit_objective(const Pencil& P, const MultiPoly& p, const RaySample& rays,
                     double tol = kRealSnapTol);

/// Derivative-free descent from init toward a pencil whose determinant is a
/// root-faithful multiple of p: cyclic coordinate descent over the
/// upper-triangular entries of each A_i with two-sided trial steps, an
/// expanding line search, step halving on stagnant cycles, and a
/// Nelder-Mead fallback once steps bottom out (the objective is only
/// piecewise smooth across eigenvalue crossings and nearest-root switches).
/// Deterministic given cfg.seed. Every accepted improvement is recorded as a
/// path snapshot; reported non-convergence is a result, not an error.
FitResult fit_pencil(const MultiPoly& p, const Pencil& init, const FitConfig& cfg);

struct SnapshotAudit {
  double t = 0.0;
  bool det_rz = false;
  bool contains = false;  // rcs(p) within rcs(det) on the sampled rays
  double min_gap = 0.0;   // min over oriented rays of radius(det)-radius(p)
  std::optional<Ray> worst_ray;
};

struct MonitorReport {
  std::vector<SnapshotAudit> audits;
  bool all_snapshots_pass = false;
  bool terminal_equality = false;  // two-sided radius match at t=1
  double terminal_max_abs_gap = 0.0;
  std::optional<Ray> terminal_worst_ray;
};

/// Audits every snapshot: the determinant must stay sampled-RZ and its
/// rigidly convex set must keep containing rcs(p) within tol; the terminal
/// snapshot must additionally match rcs(p) from both sides. Violations are
/// findings in the report, never errors. The symbolic is_rz route is used
/// up to det_cap; beyond it the determinant of a monic symmetric pencil is
/// real rooted along every line by symmetry of the eigenvalue problem.
MonitorReport monitor_path(const DeformationPath& path, const MultiPoly& p,
                           const RaySample& rays, double tol,
                           int det_cap = kDetCap);

struct CofactorResult {
  MultiPoly q{0};
  double residual = 0.0;
  int rank = 0;
};

/// Least-squares polynomial division: q of degree <= deg(f)-deg(p)
/// minimizing the coefficient 2-norm of f - q*p. The residual is
/// coeff_distance(f, q*p, 2); a rank-deficient normal system throws
/// DegenerateSystem carrying the rank found.
CofactorResult extract_cofactor(const MultiPoly& f, const MultiPoly& p);

}  // namespace rigidlens

#endif  // RIGIDLENS_DEFORM_HPP

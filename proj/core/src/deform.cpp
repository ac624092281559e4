#include "rigidlens/deform.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "rigidlens/parallel.hpp"

namespace rigidlens {

namespace {

// Per-ray target data, fixed for the whole fit: the roots of p along each
// sampled line and their reciprocals.
struct TargetData {
  std::vector<std::vector<std::complex<double>>> roots;          // per ray
  std::vector<std::vector<std::complex<double>>> inverse_roots;  // -1/root
  double unmatched_cap = 10.0;

  TargetData(const MultiPoly& p, const RaySample& rays, double tol) {
    const std::size_t k = rays.size();
    roots.resize(k);
    inverse_roots.resize(k);
    double max_radius = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const RootProfile prof = root_profile(p, rays.directions[i], tol);
      roots[i] = prof.all_complex();
      inverse_roots[i].reserve(roots[i].size());
      for (const auto& b : roots[i]) inverse_roots[i].push_back(-1.0 / b);
      for (double t : prof.real_roots)
        max_radius = std::max(max_radius, std::abs(t));
    }
    if (max_radius > 0.0) unmatched_cap = 10.0 * max_radius;
  }
};

double reduce_weighted(const RaySample& rays, const std::vector<double>& per_ray) {
  NeumaierSum total;
  for (std::size_t i = 0; i < per_ray.size(); ++i)
    total.add(rays.weights[i] * per_ray[i]);
  const double value = total.value();
  if (!std::isfinite(value))
    throw NonFiniteObjective("fit objective is not finite");
  return value;
}

template <typename RayTerm>
double weighted_ray_sum(const RaySample& rays, const RayTerm& term) {
  const std::size_t k = rays.size();
  std::vector<double> per_ray(k, 0.0);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      per_ray[i] = term(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reduce_weighted(rays, per_ray);
}

// The measure being minimized and reported: every target root contributes
// its plane distance to the nearest pencil root on its line, with empty
// lines charged the cap.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const TargetData& target, const RaySample& rays)
      : target_(&target), rays_(&rays) {}

  double operator()(const Pencil& P) const {
    return weighted_ray_sum(*rays_, [&](std::size_t i) {
      const PencilRayRoots pr = ray_roots(P, rays_->directions[i]);
      NeumaierSum s;
      for (const auto& b : target_->roots[i]) {
        if (pr.roots.empty()) {
          s.add(target_->unmatched_cap);
          continue;
        }
        double best = kInf;
        for (double r : pr.roots)
          best = std::min(best, std::abs(b - std::complex<double>(r, 0.0)));
        s.add(best);
      }
      return s.value();
    });
  }

 private:
  const TargetData* target_;
  const RaySample* rays_;
};

// Warm-start measure: the same nearest-point mismatch taken between
// reciprocal roots and raw eigenvalues of M(a). Roots escaping to infinity
// become eigenvalues crossing zero, so the landscape has no cliffs where a
// pencil root changes sign through infinity; descent can cross those
// chambers that block the root-space measure.
class SurrogateEvaluator {
 public:
  SurrogateEvaluator(const TargetData& target, const RaySample& rays)
      : target_(&target), rays_(&rays) {}

  double operator()(const Pencil& P) const {
    return weighted_ray_sum(*rays_, [&](std::size_t i) {
      const Eigen::MatrixXd m = P.direction_matrix(rays_->directions[i]);
      if (!m.allFinite())
        throw NonFiniteObjective("surrogate eigensolve on non-finite matrix");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success)
        throw NonFiniteObjective("surrogate eigensolve failed");
      NeumaierSum s;
      for (const auto& mu : target_->inverse_roots[i]) {
        double best = kInf;
        for (int j = 0; j < es.eigenvalues().size(); ++j)
          best = std::min(
              best, std::abs(mu - std::complex<double>(es.eigenvalues()[j], 0.0)));
        s.add(best);
      }
      return s.value();
    });
  }

 private:
  const TargetData* target_;
  const RaySample* rays_;
};

}  // namespace

double fit_objective(const Pencil& P, const MultiPoly& p, const RaySample& rays,
                     double tol) {
  if (p.n() != P.n())
    throw DimensionMismatch("fit_objective: variable counts differ");
  if (p.degree() > P.size())
    throw DimensionMismatch("fit_objective: pencil smaller than degree(p)");
  const TargetData target(p, rays, tol);
  return ObjectiveEvaluator(target, rays)(P);
}

namespace {

// Upper-triangular packing of the pencil coefficients.
Eigen::VectorXd pack(const Pencil& P) {
  const int n = P.n(), N = P.size();
  Eigen::VectorXd v(n * N * (N + 1) / 2);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < N; ++r)
      for (int c = r; c < N; ++c) v[idx++] = P.matrix(i)(r, c);
  return v;
}

Pencil unpack(const Eigen::VectorXd& v, int n, int N) {
  std::vector<Eigen::MatrixXd> mats(n, Eigen::MatrixXd::Zero(N, N));
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < N; ++r)
      for (int c = r; c < N; ++c) {
        mats[i](r, c) = v[idx];
        mats[i](c, r) = v[idx];
        ++idx;
      }
  if (n == 0) return Pencil(0, N);
  return Pencil(std::move(mats));
}

struct PathRecorder {
  std::vector<PathSnapshot> raw;

  void record(const Pencil& p, double objective) {
    raw.push_back(PathSnapshot{0.0, p, objective});
  }

  DeformationPath finalize() {
    DeformationPath path;
    if (raw.size() == 1) raw.push_back(raw.front());  // degenerate zero-move fit
    const std::size_t s = raw.size();
    for (std::size_t k = 0; k < s; ++k)
      raw[k].t = static_cast<double>(k) / static_cast<double>(s - 1);
    path.snapshots = std::move(raw);
    return path;
  }
};

// Tracks the best state in the reported measure; every improvement becomes a
// path snapshot, so the recorded objective sequence is strictly decreasing
// even while a descent phase is steering by the surrogate.
struct BestTracker {
  Eigen::VectorXd x;
  double f;
  PathRecorder* rec;
  int n, N;

  // Returns true when the candidate became the new best.
  bool offer(const Eigen::VectorXd& cand, double f_true) {
    if (!(f_true < f)) return false;
    f = f_true;
    x = cand;
    rec->record(unpack(cand, n, N), f_true);
    return true;
  }
};

enum class PickRule { Greedy, Cyclic };

// Coordinate descent with two-sided trial steps, an expanding line search
// along the winning direction, and halving on stagnant rounds.
//   Greedy: each round probes every coordinate both ways and moves only the
//     single best one. Slower per move but it follows the dominant descent
//     direction, which keeps the recorded deformation from taking
//     geometry-wrecking shortcuts through weaker coordinates.
//   Cyclic: classic sweep, every improving coordinate moves; used to polish.
// `fn` steers acceptance; `on_accept` sees every accepted state and returns
// true to request an early stop (when the reported measure is already below
// tolerance). Returns rounds consumed.
template <typename Fn, typename OnAccept>
int coordinate_descent(const Fn& fn, PickRule rule, Eigen::VectorXd& x,
                       double& fx, int n, int N, double step_init, double fn_tol,
                       double tol_step, int budget, const OnAccept& on_accept) {
  const int dim = static_cast<int>(x.size());
  double step = step_init;
  int rounds = 0;
  bool stop = false;

  const auto line_search = [&](int j, double dir, double f_start) {
    double h = step;
    double f_best = f_start;
    const double saved = x[j];
    while (true) {
      const double h2 = 2.0 * h;
      x[j] = saved + dir * h2;
      const double f2 = fn(unpack(x, n, N));
      if (f2 < f_best) {
        f_best = f2;
        h = h2;
      } else {
        break;
      }
    }
    x[j] = saved + dir * h;
    fx = f_best;
    stop = on_accept(x);
  };

  while (rounds < budget && fx > fn_tol && !stop) {
    ++rounds;
    bool improved = false;
    if (rule == PickRule::Greedy) {
      int best_j = -1;
      double best_dir = 0.0, best_f = fx;
      for (int j = 0; j < dim; ++j) {
        const double saved = x[j];
        x[j] = saved + step;
        const double f_plus = fn(unpack(x, n, N));
        x[j] = saved - step;
        const double f_minus = fn(unpack(x, n, N));
        x[j] = saved;
        if (f_plus < best_f) {
          best_f = f_plus;
          best_j = j;
          best_dir = 1.0;
        }
        if (f_minus < best_f) {
          best_f = f_minus;
          best_j = j;
          best_dir = -1.0;
        }
      }
      if (best_j >= 0) {
        line_search(best_j, best_dir, best_f);
        improved = true;
      }
    } else {
      for (int j = 0; j < dim && !stop; ++j) {
        const double saved = x[j];
        x[j] = saved + step;
        const double f_plus = fn(unpack(x, n, N));
        x[j] = saved - step;
        const double f_minus = fn(unpack(x, n, N));
        double dir = 0.0, f_best = fx;
        if (f_plus < f_best) {
          f_best = f_plus;
          dir = 1.0;
        }
        if (f_minus < f_best) {
          f_best = f_minus;
          dir = -1.0;
        }
        if (dir == 0.0) {
          x[j] = saved;
          continue;
        }
        line_search(j, dir, f_best);
        improved = true;
        if (fx <= fn_tol) break;
      }
    }
    if (!improved) {
      step /= 2.0;
      if (step < tol_step) break;
    }
  }
  return rounds;
}

// Nelder-Mead on the packed coordinates; deterministic. Improvements are
// reported through the tracker.
template <typename Fn>
int nelder_mead(const Fn& fn, Eigen::VectorXd& x, double fx, int n, int N,
                double scale, int budget, double fn_tol, BestTracker& best) {
  const int dim = static_cast<int>(x.size());
  if (dim == 0 || budget <= 0) return 0;
  std::vector<Eigen::VectorXd> pts(dim + 1, x);
  std::vector<double> f(dim + 1, fx);
  for (int i = 0; i < dim; ++i) {
    pts[i + 1][i] += scale;
    f[i + 1] = fn(unpack(pts[i + 1], n, N));
    best.offer(pts[i + 1], f[i + 1]);
  }
  std::vector<int> order(dim + 1);
  int used = 0;
  for (int it = 0; it < budget; ++it) {
    ++used;
    for (int i = 0; i <= dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f[a] < f[b]; });
    const int lo = order[0], hi = order[dim], second_hi = order[dim - 1];
    if (f[lo] <= fn_tol) break;
    if (std::abs(f[hi] - f[lo]) <= 1e-15 * (1.0 + std::abs(f[lo]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i <= dim; ++i)
      if (i != hi) centroid += pts[i];
    centroid /= dim;

    const auto try_point = [&](double coef) {
      Eigen::VectorXd cand = centroid + coef * (centroid - pts[hi]);
      return std::make_pair(cand, fn(unpack(cand, n, N)));
    };
    auto [refl, f_refl] = try_point(1.0);
    if (f_refl < f[lo]) {
      auto [expa, f_expa] = try_point(2.0);
      if (f_expa < f_refl) {
        pts[hi] = expa;
        f[hi] = f_expa;
      } else {
        pts[hi] = refl;
        f[hi] = f_refl;
      }
    } else if (f_refl < f[second_hi]) {
      pts[hi] = refl;
      f[hi] = f_refl;
    } else {
      auto [contr, f_contr] = try_point(-0.5);
      if (f_contr < f[hi]) {
        pts[hi] = contr;
        f[hi] = f_contr;
      } else {
        for (int i = 0; i <= dim; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          f[i] = fn(unpack(pts[i], n, N));
          best.offer(pts[i], f[i]);
        }
      }
    }
    best.offer(pts[hi], f[hi]);
  }
  int lo = 0;
  for (int i = 1; i <= dim; ++i)
    if (f[i] < f[lo]) lo = i;
  best.offer(pts[lo], f[lo]);
  x = pts[lo];
  return used;
}

}  // namespace

FitResult fit_pencil(const MultiPoly& p, const Pencil& init, const FitConfig& cfg) {
  if (p.n() != init.n())
    throw DimensionMismatch("fit_pencil: variable counts differ");
  if (p.degree() > init.size())
    throw DimensionMismatch("fit_pencil: init pencil smaller than degree(p)");
  if (cfg.max_iters < 1 || cfg.tol_objective <= 0 || cfg.tol_step <= 0 ||
      cfg.step_init <= 0)
    throw DimensionMismatch("fit_pencil: invalid config");

  const TargetData target(p, cfg.rays, cfg.tol);
  const ObjectiveEvaluator objective(target, cfg.rays);
  const SurrogateEvaluator surrogate(target, cfg.rays);

  const int n = init.n(), N = init.size();
  Eigen::VectorXd x = pack(init);
  const double f_init = objective(init);

  PathRecorder rec;
  rec.record(init, f_init);
  BestTracker best{x, f_init, &rec, n, N};

  int iters = 0;
  if (cfg.optimizer == Optimizer::CoordinateDescentFD) {
    // Greedy descent on the reported measure; well-posed fits finish here
    // and their recorded path is the plain descent trace.
    double fx = f_init;
    iters += coordinate_descent(
        objective, PickRule::Greedy, x, fx, n, N, cfg.step_init,
        cfg.tol_objective, cfg.tol_step, cfg.max_iters / 2,
        [&](const Eigen::VectorXd& cand) {
          best.offer(cand, fx);
          return fx <= cfg.tol_objective;
        });
    // Stalled in a nearest-root chamber: steer by the reciprocal-root
    // surrogate, which is smooth where a pencil root crosses infinity, then
    // polish on the reported measure again.
    if (best.f > cfg.tol_objective && iters < cfg.max_iters) {
      x = best.x;
      double fs = surrogate(unpack(x, n, N));
      iters += coordinate_descent(
          surrogate, PickRule::Greedy, x, fs, n, N, cfg.step_init, 1e-13,
          cfg.tol_step, (cfg.max_iters - iters + 1) / 2,
          [&](const Eigen::VectorXd& cand) {
            best.offer(cand, objective(unpack(cand, n, N)));
            return best.f <= cfg.tol_objective;
          });
    }
    if (best.f > cfg.tol_objective && iters < cfg.max_iters) {
      x = best.x;
      fx = best.f;
      iters += coordinate_descent(
          objective, PickRule::Cyclic, x, fx, n, N, cfg.step_init / 4.0,
          cfg.tol_objective, cfg.tol_step, cfg.max_iters - iters,
          [&](const Eigen::VectorXd& cand) {
            best.offer(cand, fx);
            return fx <= cfg.tol_objective;
          });
    }
    // Simplex rescue if descent bottomed out above tolerance.
    if (best.f > cfg.tol_objective && iters < cfg.max_iters) {
      x = best.x;
      const double scale = std::max(cfg.step_init / 8.0, 64.0 * cfg.tol_step);
      iters += nelder_mead(objective, x, best.f, n, N, scale,
                           cfg.max_iters - iters, cfg.tol_objective, best);
    }
  } else {
    iters += nelder_mead(objective, x, f_init, n, N, cfg.step_init,
                         cfg.max_iters, cfg.tol_objective, best);
  }

  FitResult result;
  result.report.final_pencil = unpack(best.x, n, N);
  result.report.final_objective = best.f;
  result.report.iterations = iters;
  result.report.converged = best.f <= cfg.tol_objective;
  result.path = rec.finalize();

  if (N <= cfg.det_cap) {
    try {
      const MultiPoly det = det_poly(result.report.final_pencil, cfg.det_cap);
      if (det.degree() >= p.degree()) {
        CofactorResult cof = extract_cofactor(det, p);
        result.report.cofactor = std::move(cof.q);
        result.report.cofactor_residual = cof.residual;
      }
    } catch (const Error&) {
      // Cofactor extraction is best-effort reporting; the fit stands alone.
    }
  }
  return result;
}

MonitorReport monitor_path(const DeformationPath& path, const MultiPoly& p,
                           const RaySample& rays, double tol, int det_cap) {
  if (path.snapshots.empty())
    throw DimensionMismatch("monitor_path: empty path");

  // Radii of the target along every oriented semiline, fixed once.
  const std::size_t k = rays.size();
  std::vector<std::pair<double, double>> target(k);
  for (std::size_t i = 0; i < k; ++i)
    target[i] = rcs_radii_both(p, rays.directions[i]);

  const auto gap_of = [](double det_r, double p_r) {
    const bool di = std::isinf(det_r), pi = std::isinf(p_r);
    if (di && pi) return 0.0;
    if (di) return kInf;   // pencil unbounded where p is bounded: containment holds
    if (pi) return -kInf;  // p unbounded where pencil is bounded: violation
    return det_r - p_r;
  };

  MonitorReport report;
  report.all_snapshots_pass = true;
  for (const auto& snap : path.snapshots) {
    SnapshotAudit audit;
    audit.t = snap.t;

    if (snap.pencil.size() <= det_cap) {
      const MultiPoly det = det_poly(snap.pencil, det_cap);
      audit.det_rz = is_rz(det, rays.directions).is_rz;
    } else {
      audit.det_rz = true;  // symmetric eigenvalues: real along every line
    }

    audit.min_gap = kInf;
    audit.contains = true;
    for (std::size_t i = 0; i < k; ++i) {
      const Ray& a = rays.directions[i];
      const double dp = spectrahedral_radius(snap.pencil, a);
      const double dn = spectrahedral_radius(snap.pencil, a.opposite());
      for (const auto& [gap, dir] :
           {std::make_pair(gap_of(dp, target[i].first), a),
            std::make_pair(gap_of(dn, target[i].second), a.opposite())}) {
        if (gap < audit.min_gap) {
          audit.min_gap = gap;
          audit.worst_ray = dir;
        }
        if (gap < -tol) audit.contains = false;
      }
    }
    if (!audit.det_rz || !audit.contains) report.all_snapshots_pass = false;
    report.audits.push_back(std::move(audit));
  }

  // Terminal snapshot: two-sided radius equality.
  const auto& last = path.snapshots.back();
  report.terminal_max_abs_gap = 0.0;
  report.terminal_equality = true;
  for (std::size_t i = 0; i < k; ++i) {
    const Ray& a = rays.directions[i];
    const double dp = spectrahedral_radius(last.pencil, a);
    const double dn = spectrahedral_radius(last.pencil, a.opposite());
    for (const auto& [gap, dir] :
         {std::make_pair(gap_of(dp, target[i].first), a),
          std::make_pair(gap_of(dn, target[i].second), a.opposite())}) {
      const double abs_gap = std::abs(gap);
      if (abs_gap > report.terminal_max_abs_gap) {
        report.terminal_max_abs_gap = abs_gap;
        report.terminal_worst_ray = dir;
      }
      if (!(abs_gap <= tol)) report.terminal_equality = false;
    }
  }
  return report;
}

CofactorResult extract_cofactor(const MultiPoly& f, const MultiPoly& p) {
  if (f.n() != p.n())
    throw DimensionMismatch("extract_cofactor: variable counts differ");
  if (f.degree() < p.degree())
    throw DimensionMismatch("extract_cofactor: deg(f) < deg(p)");
  if (p.is_zero()) throw ZeroPolynomial("extract_cofactor: zero divisor");

  const int n = f.n();
  const int dq = f.degree() - p.degree();
  const auto q_basis = monomial_basis(n, dq);
  const auto row_basis = monomial_basis(n, f.degree());

  std::map<Monomial, int, GradedLexLess> row_index;
  for (std::size_t i = 0; i < row_basis.size(); ++i)
    row_index[row_basis[i]] = static_cast<int>(i);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(row_basis.size(), q_basis.size());
  for (std::size_t j = 0; j < q_basis.size(); ++j) {
    for (const auto& [m, c] : p.terms()) {
      Monomial prod = m;
      for (int i = 0; i < n; ++i) prod.exps[i] += q_basis[j].exps[i];
      // deg(prod) <= dq + deg(p) = deg(f), so the row always exists.
      A(row_index.at(prod), j) += c;
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(row_basis.size());
  for (const auto& [m, c] : f.terms()) b[row_index.at(m)] = c;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const int rank = static_cast<int>(qr.rank());
  if (rank < static_cast<int>(q_basis.size()))
    throw DegenerateSystem("extract_cofactor: rank-deficient normal system", rank);
  const Eigen::VectorXd coeffs = qr.solve(b);

  MultiPoly q(n);
  for (std::size_t j = 0; j < q_basis.size(); ++j) q.add_term(q_basis[j], coeffs[j]);
  CofactorResult result;
  result.residual = coeff_distance(f, multiply(q, p), 2.0);
  result.q = std::move(q);
  result.rank = rank;
  return result;
}

}  // namespace rigidlens

#include "rigidlens/rzgeom.hpp"

#include <algorithm>
#include <cmath>

#include "rigidlens/parallel.hpp"
#include "rigidlens/rng.hpp"

namespace rigidlens {

RzVerdict is_rz(const MultiPoly& p, const std::vector<Ray>& rays, double tol) {
  if (!p.is_comonic(1e-9))
    throw ZeroAtOrigin("is_rz: polynomial must be comonic");
  const std::size_t k = rays.size();
  std::vector<std::optional<std::complex<double>>> bad(k);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      const RootProfile prof = root_profile(p, rays[i], tol);
      if (!prof.complex_roots.empty()) bad[i] = prof.complex_roots.front();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RzVerdict v;
  v.rays_checked = static_cast<int>(k);
  v.tol = tol;
  v.is_rz = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (bad[i]) {
      v.is_rz = false;
      v.witness = std::make_pair(rays[i], *bad[i]);
      break;
    }
  }
  return v;
}

RzVerdict is_rz_from_point(const MultiPoly& p, const Eigen::VectorXd& x0,
                           const std::vector<Ray>& rays, double tol) {
  const double px0 = evaluate(p, x0);
  if (std::abs(px0) < 1e-12)
    throw BasePointOnZeroSet("is_rz_from_point: base point lies on the zero set");
  // Lines through x0 of p are lines through 0 of p(x + x0).
  const MultiPoly shifted = comonic_normalize(translate_origin(p, -x0));
  return is_rz(shifted, rays, tol);
}

RadialSlice radial_slice(const MultiPoly& p, const Ray& a, double tol) {
  const RootProfile prof = root_profile(p, a, tol);
  if (!prof.complex_roots.empty())
    throw NonRealRooted("radial_slice: restriction has non-real roots");
  RadialSlice s{a, kInf, prof.positive_semiline()};
  if (!s.ovaloid_radii.empty()) s.rcs_radius = s.ovaloid_radii.front();
  return s;
}

std::pair<double, double> rcs_radii_both(const MultiPoly& p, const Ray& a,
                                         double tol) {
  const RootProfile prof = root_profile(p, a, tol);
  if (!prof.complex_roots.empty())
    throw NonRealRooted("rcs_radii_both: restriction has non-real roots");
  const auto pos = prof.positive_semiline();
  const auto neg = prof.opposite_semiline();
  return {pos.empty() ? kInf : pos.front(), neg.empty() ? kInf : neg.front()};
}

namespace {

// Signed containment gap between radii; positive means inner sticks out.
double containment_gap(double inner, double outer) {
  const bool ii = std::isinf(inner);
  const bool oi = std::isinf(outer);
  if (ii && oi) return 0.0;
  if (ii) return kInf;
  if (oi) return -kInf;
  return inner - outer;
}

}  // namespace

RcsContainment rcs_contains(const MultiPoly& inner, const MultiPoly& outer,
                            const std::vector<Ray>& rays, double tol) {
  const std::size_t k = rays.size();
  std::vector<std::pair<double, double>> gaps(k);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      const auto [ip, in] = rcs_radii_both(inner, rays[i]);
      const auto [op, on] = rcs_radii_both(outer, rays[i]);
      gaps[i] = {containment_gap(ip, op), containment_gap(in, on)};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RcsContainment r;
  r.contained = true;
  for (std::size_t i = 0; i < k; ++i) {
    const auto consider = [&](double gap, const Ray& dir) {
      if (gap > r.worst_gap) {
        r.worst_gap = gap;
        r.worst_ray = dir;
      }
      if (gap > tol) r.contained = false;
    };
    consider(gaps[i].first, rays[i]);
    consider(gaps[i].second, rays[i].opposite());
  }
  return r;
}

double smoothness_probe(const MultiPoly& p, const std::vector<Ray>& rays,
                        double tol) {
  double min_grad = kInf;
  for (const auto& a : rays) {
    const RootProfile prof = root_profile(p, a, tol);
    for (double t : prof.real_roots) {
      const Eigen::VectorXd x = t * a.direction();
      min_grad = std::min(min_grad, gradient(p, x).norm());
    }
  }
  return min_grad;
}

OpennessProbe rz_openness_probe(const MultiPoly& p, const std::vector<Ray>& rays,
                                double tol, int trials, std::uint64_t seed,
                                double delta_init, int bisection_steps) {
  const auto basis = monomial_basis(p.n(), p.degree());
  std::mt19937_64 rng(seed);
  // Unit coefficient directions, fixed once so the bisection predicate is
  // stable across delta levels.
  std::vector<std::vector<double>> dirs(trials);
  for (auto& dir : dirs) {
    dir.resize(basis.size());
    double norm2 = 0.0;
    for (auto& c : dir) {
      c = gaussian(rng);
      norm2 += c * c;
    }
    const double norm = std::sqrt(norm2);
    for (auto& c : dir) c /= (norm > 0 ? norm : 1.0);
  }

  const auto all_rz_at = [&](double delta) {
    for (const auto& dir : dirs) {
      MultiPoly q = p;
      for (std::size_t j = 0; j < basis.size(); ++j)
        q.add_term(basis[j], delta * dir[j]);
      try {
        q = comonic_normalize(q);
        if (!is_rz(q, rays, tol).is_rz) return false;
      } catch (const Error&) {
        return false;  // constant term wiped out or origin hit: not RZ-stable
      }
    }
    return true;
  };

  OpennessProbe probe;
  probe.trials = trials;

  double good = 0.0, bad = 0.0;
  double delta = delta_init;
  if (all_rz_at(delta)) {
    good = delta;
    for (int i = 0; i < 8; ++i) {  // bracket upward
      delta *= 2.0;
      ++probe.bisection_steps;
      if (!all_rz_at(delta)) {
        bad = delta;
        break;
      }
      good = delta;
    }
  } else {
    bad = delta;
    for (int i = 0; i < 40 && good == 0.0; ++i) {  // bracket downward
      delta /= 2.0;
      ++probe.bisection_steps;
      if (all_rz_at(delta)) good = delta;
      else bad = delta;
    }
  }
  if (good == 0.0) return probe;  // found=false: no RZ-stable level reached

  if (bad > 0.0) {
    for (int i = 0; i < bisection_steps; ++i) {
      const double mid = 0.5 * (good + bad);
      ++probe.bisection_steps;
      if (all_rz_at(mid)) good = mid;
      else bad = mid;
    }
  }
  probe.found = true;
  probe.delta = good;
  return probe;
}

}  // namespace rigidlens

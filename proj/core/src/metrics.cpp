#include "rigidlens/metrics.hpp"

#include <algorithm>

#include "rigidlens/parallel.hpp"
#include "rigidlens/rzgeom.hpp"

namespace rigidlens {

namespace {

void validate(const MetricConfig& cfg) {
  if (cfg.u < 1.0) throw DimensionMismatch("metric exponent u must be >= 1");
  if (cfg.mode != DistanceMode::Coefficient && cfg.rays.size() == 0)
    throw DimensionMismatch("metric requires a nonempty ray sample");
}

double matched_sum(const std::vector<double>& a, const std::vector<double>& b,
                   double u) {
  const std::size_t m = std::min(a.size(), b.size());
  NeumaierSum s;
  for (std::size_t i = 0; i < m; ++i) s.add(std::pow(std::abs(a[i] - b[i]), u));
  return s.value();
}

}  // namespace

double coeff_distance(const MultiPoly& p, const MultiPoly& q, double u) {
  if (p.n() != q.n())
    throw DimensionMismatch("coeff_distance: variable counts differ");
  if (u < 1.0) throw DimensionMismatch("coeff_distance: u must be >= 1");
  NeumaierSum s;
  auto ip = p.terms().begin();
  auto iq = q.terms().begin();
  const GradedLexLess less;
  while (ip != p.terms().end() || iq != q.terms().end()) {
    double diff;
    if (iq == q.terms().end() ||
        (ip != p.terms().end() && less(ip->first, iq->first))) {
      diff = ip->second;
      ++ip;
    } else if (ip == p.terms().end() || less(iq->first, ip->first)) {
      diff = iq->second;
      ++iq;
    } else {
      diff = ip->second - iq->second;
      ++ip;
      ++iq;
    }
    s.add(std::pow(std::abs(diff), u));
  }
  return std::pow(s.value(), 1.0 / u);
}

double root_distance(const MultiPoly& p, const MultiPoly& q,
                     const MetricConfig& cfg) {
  validate(cfg);
  if (cfg.mode != DistanceMode::RootOrdered &&
      cfg.mode != DistanceMode::RootOrderedHalf)
    throw DimensionMismatch("root_distance: config mode is not a root mode");
  const bool half = cfg.mode == DistanceMode::RootOrderedHalf;
  const std::size_t k = cfg.rays.size();
  std::vector<double> per_ray(k, 0.0);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      const Ray& a = cfg.rays.directions[i];
      const RootProfile pp = root_profile(p, a, cfg.tol, half);
      const RootProfile qp = root_profile(q, a, cfg.tol, half);
      if (!pp.complex_roots.empty() || !qp.complex_roots.empty())
        throw NonRealRooted(
            "root_distance: non-real roots along a sampled line; ordering "
            "undefined (use the radial measure)");
      if (half) {
        per_ray[i] = matched_sum(pp.full_line(), qp.full_line(), cfg.u);
      } else {
        per_ray[i] =
            matched_sum(pp.positive_semiline(), qp.positive_semiline(), cfg.u) +
            matched_sum(pp.opposite_semiline(), qp.opposite_semiline(), cfg.u);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  NeumaierSum total;
  for (std::size_t i = 0; i < k; ++i) total.add(cfg.rays.weights[i] * per_ray[i]);
  return total.value();
}

namespace {

// Canonical total order on polynomials used only to break equal-degree ties
// deterministically under argument swap.
bool canonically_before(const MultiPoly& p, const MultiPoly& q) {
  auto ip = p.terms().begin();
  auto iq = q.terms().begin();
  const GradedLexLess less;
  for (; ip != p.terms().end() && iq != q.terms().end(); ++ip, ++iq) {
    if (less(ip->first, iq->first)) return true;
    if (less(iq->first, ip->first)) return false;
    if (ip->second != iq->second) return ip->second < iq->second;
  }
  return p.terms().size() < q.terms().size();
}

}  // namespace

double radial_distance(const MultiPoly& p, const MultiPoly& q,
                       const MetricConfig& cfg) {
  validate(cfg);
  if (p.n() != q.n())
    throw DimensionMismatch("radial_distance: variable counts differ");
  const MultiPoly* low = &p;
  const MultiPoly* high = &q;
  if (q.degree() < p.degree() ||
      (q.degree() == p.degree() && canonically_before(q, p)))
    std::swap(low, high);

  const auto metric =
      cfg.complex_metric
          ? cfg.complex_metric
          : [](std::complex<double> a, std::complex<double> b) {
              return std::abs(a - b);
            };

  const std::size_t k = cfg.rays.size();
  std::vector<double> per_ray(k, 0.0);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      const Ray& a = cfg.rays.directions[i];
      const auto lows = root_profile(*low, a, cfg.tol).all_complex();
      const auto highs = root_profile(*high, a, cfg.tol).all_complex();
      NeumaierSum s;
      for (const auto& b : lows) {
        double best = kInf;  // empty target set: the root escaped to infinity
        for (const auto& c : highs) best = std::min(best, metric(b, c));
        s.add(best);
      }
      per_ray[i] = s.value();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  NeumaierSum total;
  for (std::size_t i = 0; i < k; ++i) total.add(cfg.rays.weights[i] * per_ray[i]);
  return total.value();
}

std::vector<double> finite_sample_weights(const std::vector<Ray>& rays) {
  return line_voronoi_weights(rays);
}

double distance(const MultiPoly& p, const MultiPoly& q, const MetricConfig& cfg) {
  switch (cfg.mode) {
    case DistanceMode::Coefficient:
      return coeff_distance(p, q, cfg.u);
    case DistanceMode::RootOrdered:
    case DistanceMode::RootOrderedHalf:
      return root_distance(p, q, cfg);
    case DistanceMode::RadialNearest:
      return radial_distance(p, q, cfg);
  }
  throw DimensionMismatch("distance: unknown mode");
}

}  // namespace rigidlens

#include "rigidlens/tangentcover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rigidlens/rays.hpp"

namespace rigidlens {

std::vector<Eigen::VectorXd> sample_zero_points(const MultiPoly& p,
                                                const std::vector<Ray>& rays,
                                                double tol) {
  std::vector<Eigen::VectorXd> points;
  for (const auto& a : rays) {
    const RootProfile prof = root_profile(p, a, tol, /*half=*/true);
    for (double t : prof.real_roots) {
      Eigen::VectorXd x = t * a.direction();
      bool duplicate = false;
      for (const auto& q : points) {
        if ((q - x).norm() <= 1e-8) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) points.push_back(std::move(x));
    }
  }
  return points;
}

LinearForm tangent_form(const MultiPoly& p, const Eigen::VectorXd& u,
                        double zero_tol, double smooth_tol) {
  const double pu = evaluate(p, u);
  if (std::abs(pu) > zero_tol)
    throw Error("tangent_form: base point is not on the zero set");
  const Eigen::VectorXd g = gradient(p, u);
  const double gnorm = g.norm();
  if (gnorm <= smooth_tol)
    throw SingularPoint("tangent_form: gradient vanishes at the base point");
  const double gu = g.dot(u);
  if (std::abs(gu) <= 1e-10 * gnorm * u.norm())
    throw TangentThroughOrigin(
        "tangent_form: tangent hyperplane passes through the origin");
  return LinearForm{-g / gu};
}

TangentCover build_cover(const MultiPoly& p, const std::vector<Ray>& rays,
                         int block_size, double tol, int probe_multiplier) {
  if (rays.empty()) throw DimensionMismatch("build_cover: empty ray set");
  if (block_size < 1) throw DimensionMismatch("build_cover: block_size must be >= 1");

  TangentCover cover;
  for (const auto& u : sample_zero_points(p, rays, tol)) {
    try {
      LinearForm form = tangent_form(p, u);
      cover.max_base_point_residual =
          std::max(cover.max_base_point_residual, std::abs(form(u)));
      cover.base_points.push_back(u);
      cover.gradients.push_back(gradient(p, u));
      cover.forms.push_back(std::move(form));
    } catch (const TangentThroughOrigin&) {
      ++cover.skipped_through_origin;
    }
  }

  const int count = static_cast<int>(cover.forms.size());
  const int bs = std::min(block_size, std::max(count, 1));
  for (int start = 0; start < count; start += bs) {
    std::vector<int> block;
    for (int i = start; i < std::min(start + bs, count); ++i) block.push_back(i);
    cover.blocks.push_back(std::move(block));
  }

  // Coverage against a denser probe of the zero set.
  if (count > 0 && probe_multiplier > 0) {
    const int n = p.n();
    const int probe_count =
        std::max<int>(64, probe_multiplier * static_cast<int>(rays.size()));
    const auto probe_rays = half_sphere_rays(n, probe_count);
    double worst = 0.0;
    for (const auto& u : sample_zero_points(p, probe_rays, tol)) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : cover.forms) {
        const double gn = f.gradient.norm();
        if (gn > 0) best = std::min(best, std::abs(f(u)) / gn);
      }
      worst = std::max(worst, best);
    }
    cover.probe_coverage = worst;
  }
  return cover;
}

}  // namespace rigidlens

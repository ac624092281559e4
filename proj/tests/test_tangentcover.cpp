#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rigidlens/rzgeom.hpp"
#include "rigidlens/tangentcover.hpp"
#include "test_helpers.hpp"

using namespace rigidlens;
using rltest::circle;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("sample_zero_points on the circle") {
  const auto pts = sample_zero_points(circle(), half_sphere_rays(2, 4));
  REQUIRE(pts.size() == 8);  // 4 lines, 2 points each
  for (const auto& u : pts) CHECK(u.norm() == doctest::Approx(1.0));
}

TEST_CASE("rays missing the zero set contribute nothing") {
  const auto strip = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{2, 0}, -1.0}});
  const auto pts = sample_zero_points(strip, {Ray(pt({0, 1}))});
  CHECK(pts.empty());
}

TEST_CASE("nested circles sample both ovaloids") {
  const auto p = multiply(circle(), rltest::disk(2.0));
  const auto pts = sample_zero_points(p, half_sphere_rays(2, 4));
  REQUIRE(pts.size() == 16);
  int inner = 0, outer = 0;
  for (const auto& u : pts) {
    if (std::abs(u.norm() - 1.0) < 1e-6) ++inner;
    if (std::abs(u.norm() - 2.0) < 1e-6) ++outer;
  }
  CHECK(inner == 8);
  CHECK(outer == 8);
}

TEST_CASE("duplicate points are collapsed") {
  // Two rays spanning the same line.
  const std::vector<Ray> rays = {Ray(pt({1, 0})), Ray(pt({1, 1e-15}))};
  const auto pts = sample_zero_points(circle(), rays);
  CHECK(pts.size() == 2);
}

TEST_CASE("tangent_form hand cases on the circle") {
  SUBCASE("at (1,0): 1 - x1") {
    const auto l = tangent_form(circle(), pt({1, 0}));
    CHECK(l.gradient[0] == doctest::Approx(-1.0));
    CHECK(l.gradient[1] == doctest::Approx(0.0));
    CHECK(l(pt({1, 0})) == doctest::Approx(0.0));
    CHECK(l(pt({0, 0})) == doctest::Approx(1.0));
  }
  SUBCASE("at (0,-1): 1 + x2") {
    const auto l = tangent_form(circle(), pt({0, -1}));
    CHECK(l.gradient[0] == doctest::Approx(0.0));
    CHECK(l.gradient[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("tangent_form error paths") {
  SUBCASE("not a zero point") {
    CHECK_THROWS_AS(tangent_form(circle(), pt({0.5, 0})), Error);
  }
  SUBCASE("singular point of a squared curve") {
    const auto dbl = multiply(circle(), circle());
    CHECK_THROWS_AS(tangent_form(dbl, pt({1, 0})), SingularPoint);
  }
  SUBCASE("tangent through the origin") {
    // Circle of radius 1 centered at (0,2), normalized to be comonic:
    // p = 1 - (4/3) x2 + (x1^2 + x2^2)/3. The tangents from the origin touch
    // at (+-sqrt(3)/2, 3/2).
    const auto p = MultiPoly::from_terms(2, {{{0, 0}, 1.0},
                                             {{0, 1}, -4.0 / 3.0},
                                             {{2, 0}, 1.0 / 3.0},
                                             {{0, 2}, 1.0 / 3.0}});
    const Eigen::VectorXd u = pt({std::sqrt(3.0) / 2.0, 1.5});
    CHECK(std::abs(evaluate(p, u)) <= 1e-12);
    CHECK_THROWS_AS(tangent_form(p, u), TangentThroughOrigin);
  }
}

TEST_CASE("build_cover on the circle with a dense sample") {
  const auto cover = build_cover(circle(), half_sphere_rays(2, 64), 2);
  CHECK(cover.forms.size() == 128);
  CHECK(cover.blocks.size() == 64);
  for (const auto& b : cover.blocks) CHECK(b.size() == 2);
  CHECK(cover.skipped_through_origin == 0);
  // Every sampled zero point owns its tangent.
  CHECK(cover.max_base_point_residual <= 1e-8);
  for (std::size_t i = 0; i < cover.forms.size(); ++i) {
    CHECK(std::abs(cover.forms[i](cover.base_points[i])) <= 1e-8);
    CHECK(cover.forms[i](pt({0, 0})) == 1.0);  // comonic by construction
  }
}

TEST_CASE("coarse cover coverage follows circle geometry") {
  // 4 lines tangent at 8 points spaced pi/4; the worst midpoint sits pi/8
  // away from the nearest tangency, at distance 1-cos(pi/8) from its line.
  // The probe multiplier bounds the angular resolution of the estimate.
  const auto cover =
      build_cover(circle(), half_sphere_rays(2, 4), 2, kRealSnapTol, 256);
  CHECK(cover.forms.size() == 8);
  const double expected = 1.0 - std::cos(std::numbers::pi / 8.0);
  CHECK(std::abs(cover.probe_coverage - expected) <= 2e-3);
}

TEST_CASE("ragged last block") {
  const auto cover = build_cover(circle(), half_sphere_rays(2, 4), 3);
  REQUIRE(cover.blocks.size() == 3);
  CHECK(cover.blocks[0].size() == 3);
  CHECK(cover.blocks[1].size() == 3);
  CHECK(cover.blocks[2].size() == 2);
}

TEST_CASE("empty ray set is rejected") {
  CHECK_THROWS_AS(build_cover(circle(), {}, 2), DimensionMismatch);
}

TEST_CASE("tangents to convex innermost ovaloids do not cut the rcs") {
  const auto rays = half_sphere_rays(2, 32);
  for (const auto& p : {circle(), rltest::ellipse(2.0, 1.0)}) {
    const auto cover = build_cover(p, rays, 4);
    for (const auto& a : rays) {
      const double radius = radial_slice(p, a).rcs_radius;
      for (const auto& f : cover.forms) {
        const double slope = f.gradient.dot(a.direction());
        if (slope == 0.0) continue;
        const double t_hit = -1.0 / slope;  // l(t a) = 1 + t*slope = 0
        if (t_hit <= 0) continue;
        CHECK(t_hit >= radius - 1e-7);
      }
    }
  }
}

TEST_CASE("diagonal pencil of the cover vanishes at base points") {
  const auto cover = build_cover(circle(), half_sphere_rays(2, 8), 2);
  const auto P = diag_pencil(cover.forms, 2);
  const auto det = det_poly(P, 16);
  for (const auto& u : cover.base_points)
    CHECK(std::abs(evaluate(det, u)) <= 1e-6);
}

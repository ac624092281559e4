#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rigidlens/pencil.hpp"
#include "rigidlens/rzgeom.hpp"
#include "test_helpers.hpp"

using namespace rigidlens;
using rltest::circle;
using rltest::tv_screen;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Ellipse 1 - x1^2/a^2 - x2^2/b^2 rotated by phi, built from scratch so the
// rotation-invariance check does not depend on any substitution op.
MultiPoly rotated_ellipse(double a, double b, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  // p(R(-phi) x) with u = c*x1 + s*x2, v = -s*x1 + c*x2:
  // 1 - u^2/a^2 - v^2/b^2
  const double ia = 1.0 / (a * a), ib = 1.0 / (b * b);
  return MultiPoly::from_terms(
      2, {{{0, 0}, 1.0},
          {{2, 0}, -(c * c * ia + s * s * ib)},
          {{0, 2}, -(s * s * ia + c * c * ib)},
          {{1, 1}, -(2 * c * s * ia - 2 * s * c * ib)}});
}

}  // namespace

TEST_CASE("is_rz separates the circle from the tv screen") {
  const auto rays = half_sphere_rays(2, 256);
  const auto good = is_rz(circle(), rays);
  CHECK(good.is_rz);
  CHECK(good.rays_checked == 256);
  CHECK_FALSE(good.witness.has_value());

  const auto bad = is_rz(tv_screen(), rays);
  CHECK_FALSE(bad.is_rz);
  REQUIRE(bad.witness.has_value());
  // The witness restriction really does carry the complex root it names.
  const auto prof = root_profile(tv_screen(), bad.witness->first);
  CHECK_FALSE(prof.complex_roots.empty());
  CHECK(std::abs(bad.witness->second.imag()) > 0.0);
}

TEST_CASE("determinants of symmetric pencils are RZ") {
  const auto det = det_poly(rltest::circle_pencil());
  CHECK(coeff_distance(det, circle(), 2.0) <= 1e-12);
  CHECK(is_rz(det, half_sphere_rays(2, 128)).is_rz);
}

TEST_CASE("is_rz_from_point agrees with the origin check") {
  const auto rays = half_sphere_rays(2, 128);
  CHECK(is_rz_from_point(circle(), pt({0.3, 0.0}), rays).is_rz);
  CHECK_FALSE(is_rz_from_point(tv_screen(), pt({0.1, 0.1}), rays).is_rz);
  const auto strip = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{2, 0}, -1.0}});
  CHECK(is_rz_from_point(strip, pt({0.5, 0.0}), rays).is_rz);
  CHECK_THROWS_AS(is_rz_from_point(circle(), pt({1.0, 0.0}), rays),
                  BasePointOnZeroSet);
}

TEST_CASE("is_rz equals is_rz_from_point on a corpus of interior points") {
  const auto rays = half_sphere_rays(2, 128);
  const std::vector<MultiPoly> corpus = {
      circle(), rltest::ellipse(2.0, 1.0),
      multiply(circle(), rltest::disk(2.0)), tv_screen(),
      det_poly(rltest::circle_pencil())};
  std::mt19937_64 rng(101);
  for (const auto& p : corpus) {
    const bool base = is_rz(p, rays).is_rz;
    for (int i = 0; i < 10; ++i) {
      Eigen::VectorXd x0(2);
      // Small interior points: every corpus member's rcs holds the 0.2-ball.
      x0 << 0.2 * uniform_pm1(rng), 0.2 * uniform_pm1(rng);
      CHECK(is_rz_from_point(p, x0, rays).is_rz == base);
    }
  }
}

TEST_CASE("radial_slice radii") {
  SUBCASE("unit circle from any direction") {
    for (const auto& a : half_sphere_rays(2, 8)) {
      const auto s = radial_slice(circle(), a);
      CHECK(s.rcs_radius == doctest::Approx(1.0));
      REQUIRE(s.ovaloid_radii.size() == 1);
    }
  }
  SUBCASE("two nested circles") {
    const auto p = multiply(circle(), rltest::disk(2.0));
    const auto s = radial_slice(p, Ray(pt({0.6, 0.8})));
    REQUIRE(s.ovaloid_radii.size() == 2);
    CHECK(s.ovaloid_radii[0] == doctest::Approx(1.0));
    CHECK(s.ovaloid_radii[1] == doctest::Approx(2.0));
    CHECK(s.rcs_radius == doctest::Approx(1.0));
  }
  SUBCASE("strip has an escape direction") {
    const auto strip = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{2, 0}, -1.0}});
    const auto s = radial_slice(strip, Ray(pt({0, 1})));
    CHECK(std::isinf(s.rcs_radius));
    CHECK(s.ovaloid_radii.empty());
  }
  SUBCASE("non-real restriction is an error") {
    CHECK_THROWS_AS(radial_slice(tv_screen(), Ray(pt({1, 0}))), NonRealRooted);
  }
}

TEST_CASE("rcs_contains on nested disks") {
  const auto rays = half_sphere_rays(2, 64);
  const auto unit = circle();
  const auto big = rltest::disk(2.0);

  const auto ok = rcs_contains(unit, big, rays, 1e-9);
  CHECK(ok.contained);
  CHECK(ok.worst_gap == doctest::Approx(-1.0));  // 1 - 2 on every semiline

  const auto reversed = rcs_contains(big, unit, rays, 1e-9);
  CHECK_FALSE(reversed.contained);
  CHECK(reversed.worst_gap == doctest::Approx(1.0));
  REQUIRE(reversed.worst_ray.has_value());
}

TEST_CASE("rcs_contains p within p*q when q is zero-free on rcs(p)") {
  const auto p = circle();
  const auto q = rltest::disk(3.0);
  const auto pq = multiply(p, q);
  const auto verdict = rcs_contains(p, pq, half_sphere_rays(2, 64), 1e-9);
  CHECK(verdict.contained);
  // Roots of the product are the union: the first positive root matches p's.
  CHECK(std::abs(verdict.worst_gap) <= 1e-9);
}

TEST_CASE("even-degree compact corpus: full root count per line") {
  const auto rays = half_sphere_rays(2, 64);
  const std::vector<MultiPoly> corpus = {circle(),
                                         multiply(circle(), rltest::disk(2.0))};
  for (const auto& p : corpus) {
    const int d = p.degree();
    for (const auto& a : rays) {
      const auto prof = root_profile(p, a);
      CHECK(prof.degree_drop == 0);
      CHECK(static_cast<int>(prof.real_roots.size()) == d);
      CHECK(static_cast<int>(prof.positive_semiline().size()) == d / 2);
      CHECK(static_cast<int>(prof.opposite_semiline().size()) == d / 2);
    }
  }
}

TEST_CASE("rcs_radius is rotation invariant") {
  const double phi = 0.53;
  const auto e = rotated_ellipse(2.0, 1.0, 0.0);
  const auto er = rotated_ellipse(2.0, 1.0, phi);
  const double c = std::cos(phi), s = std::sin(phi);
  for (const auto& a : half_sphere_rays(2, 32)) {
    const auto& d = a.direction();
    const Ray rotated(pt({c * d[0] - s * d[1], s * d[0] + c * d[1]}));
    CHECK(radial_slice(e, a).rcs_radius ==
          doctest::Approx(radial_slice(er, rotated).rcs_radius));
  }
  // Circle: invariant without any rotation of the coefficients.
  for (const auto& a : half_sphere_rays(2, 8))
    CHECK(radial_slice(circle(), a).rcs_radius == doctest::Approx(1.0));
}

TEST_CASE("openness probe finds a positive margin on smooth corpus") {
  const auto rays = half_sphere_rays(2, 64);
  const std::vector<MultiPoly> corpus = {circle(), rltest::ellipse(2.0, 1.0),
                                         det_poly(rltest::circle_pencil())};
  for (const auto& p : corpus) {
    const auto probe = rz_openness_probe(p, rays, kRealSnapTol, 20, 7);
    CHECK(probe.found);
    CHECK(probe.delta > 0.0);
  }
}

TEST_CASE("smoothness probe reports gradient floor") {
  const auto rays = half_sphere_rays(2, 64);
  // On the unit circle the gradient norm is identically 2.
  CHECK(smoothness_probe(circle(), rays) == doctest::Approx(2.0));
  // The squared circle is singular along its zero set.
  const auto dbl = multiply(circle(), circle());
  CHECK(smoothness_probe(dbl, rays) <= 1e-4);
}

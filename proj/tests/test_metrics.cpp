#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rigidlens/metrics.hpp"
#include "rigidlens/pencil.hpp"
#include "test_helpers.hpp"

using namespace rigidlens;
using rltest::circle;
using rltest::tv_screen;
constexpr double kPi = std::numbers::pi;

namespace {

MetricConfig cfg_with(DistanceMode mode, int rays, double u = 1.0) {
  MetricConfig cfg;
  cfg.mode = mode;
  cfg.u = u;
  cfg.rays = sample_half_sphere(2, rays);
  return cfg;
}

}  // namespace

TEST_CASE("coeff_distance") {
  CHECK(coeff_distance(circle(), circle(), 2.0) == 0.0);
  CHECK(coeff_distance(circle(), circle(), 1.0) == 0.0);

  const auto one = MultiPoly::constant(1, 1.0);
  const auto one_plus = MultiPoly::from_terms(1, {{{0}, 1.0}, {{1}, 1.0}});
  CHECK(coeff_distance(one, one_plus, 2.0) == doctest::Approx(1.0));

  // (1+2x1) vs (1-x1+x2) with u=1: |2-(-1)| + |0-1| = 4
  const auto p = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{1, 0}, 2.0}});
  const auto q =
      MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{1, 0}, -1.0}, {{0, 1}, 1.0}});
  CHECK(coeff_distance(p, q, 1.0) == doctest::Approx(4.0));

  CHECK_THROWS_AS(coeff_distance(circle(), one, 2.0), DimensionMismatch);
  CHECK_THROWS_AS(coeff_distance(circle(), circle(), 0.5), DimensionMismatch);
}

TEST_CASE("coeff_distance with u=2 satisfies the triangle inequality") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto a = rltest::random_poly(2, 4, 5, rng);
    const auto b = rltest::random_poly(2, 4, 5, rng);
    const auto c = rltest::random_poly(2, 4, 5, rng);
    CHECK(coeff_distance(a, c, 2.0) <=
          coeff_distance(a, b, 2.0) + coeff_distance(b, c, 2.0) + 1e-12);
  }
}

TEST_CASE("root_distance on concentric circles") {
  // p roots at +-1, q roots at +-2 along every line: each direction
  // contributes |1-2| per semiline, integrated over the full sphere: 2*pi.
  auto cfg = cfg_with(DistanceMode::RootOrdered, 64);
  const double d = root_distance(circle(), rltest::disk(2.0), cfg);
  CHECK(d == doctest::Approx(2 * kPi).epsilon(1e-9));

  // Half-line variant: full-line lists matched over the half sphere: per
  // line |(-1)-(-2)| + |1-2| = 2, total 2*pi as well for this pair.
  cfg.mode = DistanceMode::RootOrderedHalf;
  const double dh = root_distance(circle(), rltest::disk(2.0), cfg);
  CHECK(dh == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("root_distance vanishes on identical inputs") {
  auto cfg = cfg_with(DistanceMode::RootOrdered, 32);
  CHECK(root_distance(circle(), circle(), cfg) <= 1e-12);
  const auto e = rltest::ellipse(2.0, 1.0);
  CHECK(root_distance(e, e, cfg) <= 1e-12);
}

TEST_CASE("root_distance truncates mismatched degrees") {
  // p = circle (2 roots per line), q = two nested circles (4 per line):
  // matching stops at p's count; inner circles coincide so the sum is 0.
  auto cfg = cfg_with(DistanceMode::RootOrdered, 32);
  const auto nested = multiply(circle(), rltest::disk(2.0));
  CHECK(root_distance(circle(), nested, cfg) <= 1e-9);
}

TEST_CASE("root_distance rejects non-RZ inputs") {
  auto cfg = cfg_with(DistanceMode::RootOrdered, 16);
  CHECK_THROWS_AS(root_distance(circle(), tv_screen(), cfg), NonRealRooted);
  cfg.mode = DistanceMode::Coefficient;
  CHECK_THROWS_AS(root_distance(circle(), circle(), cfg), DimensionMismatch);
}

TEST_CASE("radial_distance vanishes exactly on divisor pairs") {
  auto cfg = cfg_with(DistanceMode::RadialNearest, 64);
  CHECK(radial_distance(circle(), circle(), cfg) == 0.0);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    // q = product of 1..3 random comonic linear forms with zeros outside.
    MultiPoly q = MultiPoly::constant(2, 1.0);
    const int forms = 1 + static_cast<int>(rng() % 3);
    for (int f = 0; f < forms; ++f) {
      const double gx = 0.4 * uniform_pm1(rng), gy = 0.4 * uniform_pm1(rng);
      q = multiply(q, MultiPoly::from_terms(
                          2, {{{0, 0}, 1.0}, {{1, 0}, gx}, {{0, 1}, gy}}));
    }
    const double d = radial_distance(circle(), multiply(circle(), q), cfg);
    CHECK(d <= 1e-9);
  }
}

TEST_CASE("radial_distance separates the tv screen from RZ polynomials") {
  auto cfg = cfg_with(DistanceMode::RadialNearest, 64);
  const double d = radial_distance(circle(), tv_screen(), cfg);
  // The circle is the low-degree side; the screen's real zeros bulge outside
  // the unit circle away from the axes, so the mismatch integrates to a
  // positive constant.
  CHECK(d > 0.1);
}

TEST_CASE("radial_distance is swap-invariant on equal degrees") {
  auto cfg = cfg_with(DistanceMode::RadialNearest, 32);
  const auto e = rltest::ellipse(2.0, 1.0);
  CHECK(radial_distance(circle(), e, cfg) == radial_distance(e, circle(), cfg));
  CHECK(radial_distance(circle(), tv_screen(), cfg) ==
        radial_distance(tv_screen(), circle(), cfg));
}

TEST_CASE("all measures vanish on identical inputs") {
  const auto e = rltest::ellipse(1.5, 0.75);
  CHECK(coeff_distance(e, e, 2.0) == 0.0);
  CHECK(root_distance(e, e, cfg_with(DistanceMode::RootOrdered, 16)) <= 1e-12);
  CHECK(root_distance(e, e, cfg_with(DistanceMode::RootOrderedHalf, 16)) <= 1e-12);
  CHECK(radial_distance(e, e, cfg_with(DistanceMode::RadialNearest, 16)) == 0.0);
}

TEST_CASE("finite_sample_weights mirror the ray module") {
  const auto single = finite_sample_weights(half_sphere_rays(2, 1));
  CHECK(single[0] == doctest::Approx(kPi));
  const auto four = finite_sample_weights(half_sphere_rays(2, 4));
  for (double w : four) CHECK(w == doctest::Approx(kPi / 4));
  const auto many = finite_sample_weights(half_sphere_rays(3, 256));
  double sum = 0.0;
  for (double w : many) sum += w;
  CHECK(std::abs(sum - 2 * kPi) <= 1e-9);
}

TEST_CASE("quadrature refinement stays within 5 percent") {
  const auto e = rltest::ellipse(2.0, 1.0);
  MetricConfig coarse = cfg_with(DistanceMode::RadialNearest, 128);
  MetricConfig fine = cfg_with(DistanceMode::RadialNearest, 256);
  const double dc = radial_distance(circle(), e, coarse);
  const double df = radial_distance(circle(), e, fine);
  CHECK(std::abs(dc - df) <= 0.05 * std::max(dc, df));
}

TEST_CASE("distance dispatcher matches the direct calls") {
  auto cfg = cfg_with(DistanceMode::Coefficient, 1, 2.0);
  CHECK(distance(circle(), rltest::disk(2.0), cfg) ==
        coeff_distance(circle(), rltest::disk(2.0), 2.0));
  cfg = cfg_with(DistanceMode::RadialNearest, 32);
  CHECK(distance(circle(), rltest::disk(2.0), cfg) ==
        radial_distance(circle(), rltest::disk(2.0), cfg));
}

TEST_CASE("compensated summation is reproducible") {
  NeumaierSum s;
  for (int i = 0; i < 1000; ++i) {
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
  }
  CHECK(s.value() == doctest::Approx(1000.0));
}

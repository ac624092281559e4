#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "rigidlens/rays.hpp"

using namespace rigidlens;
constexpr double kPi = std::numbers::pi;

TEST_CASE("half sphere measure") {
  CHECK(half_sphere_measure(2) == doctest::Approx(kPi));
  CHECK(half_sphere_measure(3) == doctest::Approx(2 * kPi));
}

TEST_CASE("n=2 rays are unit, half-plane, distinct lines") {
  const auto rays = half_sphere_rays(2, 32);
  REQUIRE(rays.size() == 32);
  for (const auto& a : rays) {
    CHECK(a.direction().norm() == doctest::Approx(1.0));
    CHECK(a.direction()[0] > 0.0);
  }
}

TEST_CASE("n=3 rays live on the positive-x1 hemisphere") {
  const auto rays = half_sphere_rays(3, 128);
  for (const auto& a : rays) {
    CHECK(a.direction().norm() == doctest::Approx(1.0));
    CHECK(a.direction()[0] > 0.0);
  }
}

TEST_CASE("weights: single ray carries the whole half circle") {
  const auto w = line_voronoi_weights(half_sphere_rays(2, 1));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == doctest::Approx(kPi));
}

TEST_CASE("weights: four equispaced rays split the half circle evenly") {
  const auto w = line_voronoi_weights(half_sphere_rays(2, 4));
  for (double x : w) CHECK(x == doctest::Approx(kPi / 4));
}

TEST_CASE("weights: 256 hemisphere rays sum to 2*pi") {
  const auto sample = sample_half_sphere(3, 256);
  double sum = 0.0;
  for (double w : sample.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(std::abs(sum - 2 * kPi) <= 1e-9);
}

TEST_CASE("weights sum to the half measure for n=2 irregular sets") {
  auto rays = half_sphere_rays(2, 7);
  rays.erase(rays.begin() + 2);
  const auto w = line_voronoi_weights(rays);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(kPi));
}

TEST_CASE("higher-n sampling stays deterministic and normalized") {
  const auto a = half_sphere_rays(4, 16);
  const auto b = half_sphere_rays(4, 16);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK((a[i].direction() - b[i].direction()).norm() == 0.0);
}

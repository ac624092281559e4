#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rigidlens/rootline.hpp"
#include "test_helpers.hpp"

using namespace rigidlens;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::vector<std::complex<double>> sorted(std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("univariate_roots on factorable polynomials") {
  SUBCASE("1 - t^2") {
    auto r = sorted(univariate_roots({1, 0, -1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx(-1.0));
    CHECK(r[1].real() == doctest::Approx(1.0));
    CHECK(r[0].imag() == 0.0);
  }
  SUBCASE("double root (1-t)^2") {
    auto r = sorted(univariate_roots({1, -2, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r[1].real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r[0].imag() == 0.0);
    CHECK(r[1].imag() == 0.0);
  }
  SUBCASE("1 + t^2") {
    auto r = sorted(univariate_roots({1, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].imag() == doctest::Approx(-1.0));
    CHECK(r[1].imag() == doctest::Approx(1.0));
  }
  SUBCASE("all-zero input") {
    CHECK_THROWS_AS(univariate_roots({0, 0, 0}), ZeroPolynomial);
    CHECK_THROWS_AS(univariate_roots({}), ZeroPolynomial);
  }
  SUBCASE("constant has no roots") {
    CHECK(univariate_roots({3.0}).empty());
  }
}

TEST_CASE("residual at returned roots is small") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 8);
    std::vector<double> coeffs(deg + 1);
    double norm1 = 0.0;
    for (auto& c : coeffs) {
      c = 2.0 * uniform_pm1(rng);
      norm1 += std::abs(c);
    }
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() = 1.0;
    for (const auto& z : univariate_roots(coeffs)) {
      std::complex<double> acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
      CHECK(std::abs(acc) <= 1e-8 * norm1);
    }
  }
}

TEST_CASE("root multiset is scale invariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int deg = 2 + static_cast<int>(rng() % 5);
    std::vector<double> coeffs(deg + 1);
    for (auto& c : coeffs) c = 2.0 * uniform_pm1(rng);
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() = 0.7;
    auto scaled = coeffs;
    for (auto& c : scaled) c *= 7.3;
    const auto r1 = sorted(univariate_roots(coeffs));
    const auto r2 = sorted(univariate_roots(scaled));
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
      CHECK(std::abs(r1[i] - r2[i]) <= 1e-8 * (1.0 + std::abs(r1[i])));
  }
}

TEST_CASE("complex roots come in conjugate pairs") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int deg = 2 + static_cast<int>(rng() % 6);
    std::vector<double> coeffs(deg + 1);
    for (auto& c : coeffs) c = 2.0 * uniform_pm1(rng);
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() = 1.0;
    auto roots = univariate_roots(coeffs);
    std::vector<std::complex<double>> upper, lower;
    for (auto z : roots) {
      if (z.imag() > 0) upper.push_back(z);
      if (z.imag() < 0) lower.push_back(std::conj(z));
    }
    REQUIRE(upper.size() == lower.size());
    const auto us = sorted(upper);
    const auto ls = sorted(lower);
    for (std::size_t i = 0; i < us.size(); ++i)
      CHECK(std::abs(us[i] - ls[i]) <= 1e-10 * (1.0 + std::abs(us[i])));
  }
}

TEST_CASE("root_profile of the circle") {
  const auto prof = root_profile(rltest::circle(), Ray(pt({1, 0})));
  CHECK(prof.degree_drop == 0);
  CHECK(prof.complex_roots.empty());
  const auto pos = prof.positive_semiline();
  const auto opp = prof.opposite_semiline();
  REQUIRE(pos.size() == 1);
  REQUIRE(opp.size() == 1);
  CHECK(pos[0] == doctest::Approx(1.0));
  CHECK(opp[0] == doctest::Approx(1.0));  // the root at t=-1, distance 1
  CHECK(is_real_rooted(prof));
}

TEST_CASE("root_profile of the tv screen along e1") {
  // 1 - t^4 = (1-t)(1+t)(1+t^2): real {-1, 1}, complex {i}.
  const auto prof = root_profile(rltest::tv_screen(), Ray(pt({1, 0})));
  CHECK(prof.real_roots.size() == 2);
  REQUIRE(prof.complex_roots.size() == 1);
  CHECK(prof.complex_roots[0].real() == doctest::Approx(0.0));
  CHECK(prof.complex_roots[0].imag() == doctest::Approx(1.0));
  CHECK(prof.degree_drop == 0);
  CHECK_FALSE(is_real_rooted(prof));
  // Invariant: |real| + 2|complex| + drop = degree.
  CHECK(static_cast<int>(prof.real_roots.size()) +
            2 * static_cast<int>(prof.complex_roots.size()) + prof.degree_drop ==
        4);
}

TEST_CASE("root_profile with full degree drop") {
  const auto p = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{2, 0}, -1.0}});
  const auto prof = root_profile(p, Ray(pt({0, 1})));
  CHECK(prof.real_roots.empty());
  CHECK(prof.complex_roots.empty());
  CHECK(prof.degree_drop == 2);
  CHECK(is_real_rooted(prof));  // vacuous
}

TEST_CASE("is_real_rooted on 1 - t^4/2 profile") {
  const auto p = MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{4, 0}, -0.5}});
  const auto prof = root_profile(p, Ray(pt({1, 0})));
  // t^4 = 2: two real at +-2^(1/4) and a conjugate pair on the imaginary axis.
  CHECK_FALSE(is_real_rooted(prof));
  CHECK(prof.real_roots.size() == 2);
  CHECK(prof.complex_roots.size() == 1);
  CHECK(std::abs(prof.complex_roots[0]) == doctest::Approx(std::pow(2.0, 0.25)));
}

TEST_CASE("full-line ordering is signed ascending") {
  const auto p = multiply(rltest::circle(), rltest::disk(2.0));
  const auto prof = root_profile(p, Ray(pt({1, 0})), kRealSnapTol, /*half=*/true);
  REQUIRE(prof.real_roots.size() == 4);
  CHECK(std::is_sorted(prof.real_roots.begin(), prof.real_roots.end()));
  CHECK(prof.real_roots[0] == doctest::Approx(-2.0));
  CHECK(prof.real_roots[3] == doctest::Approx(2.0));
}

TEST_CASE("semiline ordering lists positives closest-first") {
  const auto p = multiply(rltest::circle(), rltest::disk(2.0));
  const auto prof = root_profile(p, Ray(pt({1, 0})));
  const auto pos = prof.positive_semiline();
  REQUIRE(pos.size() == 2);
  CHECK(pos[0] == doctest::Approx(1.0));
  CHECK(pos[1] == doctest::Approx(2.0));
}

TEST_CASE("near-origin roots are rejected as comonicity violations") {
  // 1 + 1e14*x1: restriction root at -1e-14, inside the origin guard.
  const auto p = MultiPoly::from_terms(1, {{{0}, 1.0}, {{1}, 1e14}});
  CHECK_THROWS_AS(root_profile(p, Ray(pt({1.0}))), ZeroAtOrigin);
}

TEST_CASE("root_profile requires comonic input") {
  const auto p = MultiPoly::from_terms(1, {{{0}, 2.0}, {{2}, -1.0}});
  CHECK_THROWS_AS(root_profile(p, Ray(pt({1.0}))), ZeroAtOrigin);
}

#ifndef RIGIDLENS_TEST_HELPERS_HPP
#define RIGIDLENS_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "rigidlens/metrics.hpp"
#include "rigidlens/multipoly.hpp"
#include "rigidlens/pencil.hpp"
#include "rigidlens/rng.hpp"

namespace rltest {

using rigidlens::MultiPoly;

// 1 - x1^2 - x2^2
inline MultiPoly circle() {
  return MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}});
}

// 1 - x1^4 - x2^4, the classical convex-but-not-RZ quartic
inline MultiPoly tv_screen() {
  return MultiPoly::from_terms(2, {{{0, 0}, 1.0}, {{4, 0}, -1.0}, {{0, 4}, -1.0}});
}

// 1 - x1^2/a^2 - x2^2/b^2
inline MultiPoly ellipse(double a, double b) {
  return MultiPoly::from_terms(
      2, {{{0, 0}, 1.0}, {{2, 0}, -1.0 / (a * a)}, {{0, 2}, -1.0 / (b * b)}});
}

// 1 - (x1^2 + x2^2)/r^2, zero set a circle of radius r
inline MultiPoly disk(double r) {
  return MultiPoly::from_terms(
      2, {{{0, 0}, 1.0}, {{2, 0}, -1.0 / (r * r)}, {{0, 2}, -1.0 / (r * r)}});
}

// A1 = diag(1,-1), A2 = [[0,1],[1,0]]; det = 1 - x1^2 - x2^2.
inline rigidlens::Pencil circle_pencil() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, -1;
  a2 << 0, 1, 1, 0;
  return rigidlens::Pencil({a1, a2});
}

// Random sparse polynomial with coefficients in [-scale, scale].
inline MultiPoly random_poly(int n, int max_degree, int terms,
                             std::mt19937_64& rng, double scale = 2.0) {
  const auto basis = rigidlens::monomial_basis(n, max_degree);
  MultiPoly p(n);
  for (int t = 0; t < terms; ++t) {
    const auto& m = basis[rng() % basis.size()];
    p.add_term(m, scale * rigidlens::uniform_pm1(rng));
  }
  return p;
}

// Random polynomial with dyadic coefficients k/16, k in [-64, 64]: products
// and sums of a few such terms stay exact in double arithmetic, so ring
// identities can be asserted to exact equality.
inline MultiPoly random_dyadic_poly(int n, int max_degree, int terms,
                                    std::mt19937_64& rng) {
  const auto basis = rigidlens::monomial_basis(n, max_degree);
  MultiPoly p(n);
  for (int t = 0; t < terms; ++t) {
    const auto& m = basis[rng() % basis.size()];
    const int k = static_cast<int>(rng() % 129) - 64;
    p.add_term(m, k / 16.0);
  }
  return p;
}

inline Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rigidlens::gaussian(rng);
  if (v.norm() < 1e-9) v = Eigen::VectorXd::Unit(n, 0);
  return v / v.norm();
}

inline bool poly_close(const MultiPoly& a, const MultiPoly& b, double tol) {
  return rigidlens::coeff_distance(a, b, 2.0) <= tol;
}

}  // namespace rltest

#endif  // RIGIDLENS_TEST_HELPERS_HPP

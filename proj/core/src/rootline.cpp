#include "rigidlens/rootline.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace rigidlens {

namespace {

using Complex = std::complex<double>;

Complex eval_poly(const std::vector<double>& coeffs, Complex z) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex eval_deriv(const std::vector<double>& coeffs, Complex z) {
  Complex acc = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k)
    acc = acc * z + coeffs[k] * static_cast<double>(k);
  return acc;
}

// Parlett-Reinsch balancing with powers of two: an exact similarity that
// companion matrices need before Francis QR (Eigen does not balance).
void balance_in_place(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if (c + r < 0.95 * s && f != 1.0) {
        done = false;
        a.col(i) *= f;
        a.row(i) /= f;
      }
    }
  }
}

// Eigenvalues of a real quasi-triangular Schur form.
std::vector<Complex> schur_eigenvalues(const Eigen::MatrixXd& t) {
  const int n = static_cast<int>(t.rows());
  std::vector<Complex> out;
  int i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double mean = (t(i, i) + t(i + 1, i + 1)) / 2.0;
      const double det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
      const double disc = mean * mean - det;
      if (disc < 0.0) {
        const double im = std::sqrt(-disc);
        out.emplace_back(mean, im);
        out.emplace_back(mean, -im);
      } else {
        const double root = std::sqrt(disc);
        out.emplace_back(mean + root, 0.0);
        out.emplace_back(mean - root, 0.0);
      }
      i += 2;
    } else {
      out.emplace_back(t(i, i), 0.0);
      ++i;
    }
  }
  return out;
}

std::vector<Complex> companion_eigenvalues(Eigen::MatrixXd companion) {
  balance_in_place(companion);
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  if (es.info() == Eigen::Success) {
    std::vector<Complex> out(companion.rows());
    for (int i = 0; i < companion.rows(); ++i) out[i] = es.eigenvalues()[i];
    return out;
  }
  Eigen::RealSchur<Eigen::MatrixXd> schur;
  schur.setMaxIterations(100 * static_cast<int>(companion.rows()));
  schur.compute(companion, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw Error("univariate_roots: eigenvalue iteration failed to converge");
  return schur_eigenvalues(schur.matrixT());
}

}  // namespace

std::vector<std::complex<double>> univariate_roots(std::vector<double> coeffs,
                                                   double tol) {
  double scale = 0.0;
  for (double c : coeffs) scale += std::abs(c);
  if (scale == 0.0 || coeffs.empty())
    throw ZeroPolynomial("univariate_roots: all-zero coefficient list");
  while (coeffs.size() > 1 &&
         std::abs(coeffs.back()) <= kCoeffZeroTol * (1.0 + scale))
    coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg == 0) {
    if (std::abs(coeffs[0]) <= kCoeffZeroTol * (1.0 + scale))
      throw ZeroPolynomial("univariate_roots: all-zero coefficient list");
    return {};
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];

  std::vector<Complex> roots = companion_eigenvalues(std::move(companion));

  // One Newton polish step per root, kept only when it reduces |p|.
  for (auto& z : roots) {
    const Complex pz = eval_poly(coeffs, z);
    const Complex dz = eval_deriv(coeffs, z);
    if (std::abs(dz) <= 1e-14 * (1.0 + scale)) continue;  // near-multiple root
    const Complex cand = z - pz / dz;
    if (std::abs(eval_poly(coeffs, cand)) <= std::abs(pz)) z = cand;
  }

  for (auto& z : roots) {
    if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real())))
      z = Complex(z.real(), 0.0);
  }
  return roots;
}

std::vector<double> RootProfile::positive_semiline() const {
  std::vector<double> out;
  for (double t : real_roots)
    if (t > 0.0) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> RootProfile::opposite_semiline() const {
  std::vector<double> out;
  for (double t : real_roots)
    if (t < 0.0) out.push_back(-t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> RootProfile::full_line() const {
  std::vector<double> out = real_roots;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<double>> RootProfile::all_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(real_roots.size() + 2 * complex_roots.size());
  for (double t : real_roots) out.emplace_back(t, 0.0);
  for (const auto& z : complex_roots) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

RootProfile root_profile(const MultiPoly& p, const Ray& a, double tol, bool half) {
  if (!p.is_comonic(1e-9))
    throw ZeroAtOrigin("root_profile: polynomial must be comonic");
  const RayRestriction restriction = restrict_to_ray(p, a);
  RootProfile profile{a, {}, {}, restriction.degree_drop, half};
  if (restriction.degree() == 0) return profile;  // constant: no roots

  const auto roots = univariate_roots(restriction.coeffs, tol);
  std::vector<std::complex<double>> upper;
  for (const auto& z : roots) {
    if (z.imag() == 0.0) {
      if (std::abs(z.real()) < kNearOriginTol)
        throw ZeroAtOrigin("root_profile: root at the origin on a comonic restriction");
      profile.real_roots.push_back(z.real());
    } else if (z.imag() > 0.0) {
      upper.push_back(z);
    }
  }
  std::sort(upper.begin(), upper.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  profile.complex_roots = std::move(upper);

  if (half) {
    std::sort(profile.real_roots.begin(), profile.real_roots.end());
  } else {
    auto pos = profile.positive_semiline();
    auto neg = profile.opposite_semiline();
    profile.real_roots.clear();
    for (double t : pos) profile.real_roots.push_back(t);
    for (double t : neg) profile.real_roots.push_back(-t);
  }
  return profile;
}

bool is_real_rooted(const RootProfile& profile) {
  return profile.complex_roots.empty();
}

}  // namespace rigidlens

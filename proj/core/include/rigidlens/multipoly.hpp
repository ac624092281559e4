#ifndef RIGIDLENS_MULTIPOLY_HPP
#define RIGIDLENS_MULTIPOLY_HPP

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "rigidlens/errors.hpp"

namespace rigidlens {

/// Exponent vector of a single monomial; one entry per ambient variable.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

  int total_degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
  }
  std::size_t size() const { return exps.size(); }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

/// Graded-lexicographic order: by total degree, then lexicographic on the
/// exponent vector. Canonical order for term storage and serialization.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.total_degree();
    const int db = b.total_degree();
    if (da != db) return da < db;
    return a.exps < b.exps;
  }
};

/// Coefficients with magnitude at or below this are pruned after arithmetic
/// so term maps stay canonical under round-off.
inline constexpr double kCoeffZeroTol = 1e-14;

/// Sparse multivariate real polynomial over a fixed variable count.
///
/// Terms live in a graded-lex ordered map; no zero coefficients are stored.
/// All operations are pure and return new values.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, double, GradedLexLess>;

  explicit MultiPoly(int n = 0) : n_(n) {
    if (n < 0) throw DimensionMismatch("variable count must be >= 0");
  }

  /// Builds from (exponents, coefficient) pairs. Coefficients on the same
  /// monomial accumulate; zeros are pruned.
  static MultiPoly from_terms(
      int n, const std::vector<std::pair<std::vector<int>, double>>& terms);

  /// The constant polynomial c in n variables.
  static MultiPoly constant(int n, double c);

  /// The monomial c * x_i in n variables.
  static MultiPoly variable(int n, int i, double c = 1.0);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Max total degree over stored terms (attained degree); 0 for the zero
  /// polynomial.
  int degree() const;

  double coeff(const Monomial& m) const;
  double constant_term() const;
  bool is_comonic(double tol = kCoeffZeroTol) const;

  /// Adds c to the coefficient of m, pruning if the result is negligible.
  void add_term(const Monomial& m, double c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(double s) const;
  MultiPoly operator-() const { return *this * -1.0; }
  bool operator==(const MultiPoly& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

  /// Partial derivative with respect to variable i.
  MultiPoly partial(int i) const;

  /// 2-norm of the coefficient vector.
  double coeff_norm() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

/// Unit direction vector in R^n (Euclidean norm 1 within 1e-12).
/// Construction normalizes; a zero vector is rejected.
class Ray {
 public:
  explicit Ray(Eigen::VectorXd direction);

  const Eigen::VectorXd& direction() const { return dir_; }
  int n() const { return static_cast<int>(dir_.size()); }
  Ray opposite() const { return Ray(Eigen::VectorXd(-dir_)); }

 private:
  Eigen::VectorXd dir_;
};

/// Univariate coefficient list of p(t a), lowest degree first, trimmed to the
/// attained degree. degree_drop = degree(p) - attained restriction degree;
/// the paper reads dropped roots as having jumped to infinity, so the count
/// is carried instead of zero-padding.
struct RayRestriction {
  std::vector<double> coeffs;
  int degree_drop = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

double evaluate(const MultiPoly& p, const Eigen::VectorXd& x);

/// Gradient of p at x.
Eigen::VectorXd gradient(const MultiPoly& p, const Eigen::VectorXd& x);

RayRestriction restrict_to_ray(const MultiPoly& p, const Ray& a);

/// p / p(0). Throws ZeroAtOrigin when |p(0)| < tol.
MultiPoly comonic_normalize(const MultiPoly& p, double tol = 1e-12);

/// Exact coefficient-map convolution.
MultiPoly multiply(const MultiPoly& p, const MultiPoly& q);

/// Homogenization to degree d in n+1 variables; the new variable X_0 comes
/// first. Requires d >= degree(p).
MultiPoly homogenize(const MultiPoly& p, int d);

/// q with q(x) = p(x - x0), expanded.
MultiPoly translate_origin(const MultiPoly& p, const Eigen::VectorXd& x0);

/// Evaluates a univariate coefficient list (lowest degree first) at t.
double evaluate_univariate(const std::vector<double>& coeffs, double t);

/// All monomials of total degree <= d in n variables, graded-lex order.
std::vector<Monomial> monomial_basis(int n, int d);

}  // namespace rigidlens

#endif  // RIGIDLENS_MULTIPOLY_HPP

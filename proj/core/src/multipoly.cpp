#include "rigidlens/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rigidlens {

namespace {

void check_same_n(const MultiPoly& p, const MultiPoly& q, const char* op) {
  if (p.n() != q.n()) {
    std::ostringstream os;
    os << op << ": variable counts differ (" << p.n() << " vs " << q.n() << ")";
    throw DimensionMismatch(os.str());
  }
}

void check_monomial(int n, const Monomial& m) {
  if (static_cast<int>(m.size()) != n)
    throw DimensionMismatch("monomial length does not match variable count");
  for (int e : m.exps)
    if (e < 0) throw DimensionMismatch("negative exponent");
}

}  // namespace

MultiPoly MultiPoly::from_terms(
    int n, const std::vector<std::pair<std::vector<int>, double>>& terms) {
  MultiPoly p(n);
  for (const auto& [exps, c] : terms) {
    Monomial m(exps);
    check_monomial(n, m);
    p.add_term(m, c);
  }
  return p;
}

MultiPoly MultiPoly::constant(int n, double c) {
  MultiPoly p(n);
  p.add_term(Monomial(std::vector<int>(n, 0)), c);
  return p;
}

MultiPoly MultiPoly::variable(int n, int i, double c) {
  if (i < 0 || i >= n) throw DimensionMismatch("variable index out of range");
  MultiPoly p(n);
  std::vector<int> e(n, 0);
  e[i] = 1;
  p.add_term(Monomial(e), c);
  return p;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return 0;
  // Graded order: the last term has maximal total degree.
  return terms_.rbegin()->first.total_degree();
}

double MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double MultiPoly::constant_term() const {
  return coeff(Monomial(std::vector<int>(n_, 0)));
}

bool MultiPoly::is_comonic(double tol) const {
  return std::abs(constant_term() - 1.0) <= tol;
}

void MultiPoly::add_term(const Monomial& m, double c) {
  check_monomial(n_, m);
  auto [it, inserted] = terms_.try_emplace(m, 0.0);
  it->second += c;
  if (std::abs(it->second) <= kCoeffZeroTol) terms_.erase(it);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_n(*this, o, "add");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_same_n(*this, o, "subtract");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(double s) const {
  MultiPoly r(n_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * s);
  return r;
}

MultiPoly MultiPoly::partial(int i) const {
  if (i < 0 || i >= n_) throw DimensionMismatch("variable index out of range");
  MultiPoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[i] == 0) continue;
    Monomial d = m;
    d.exps[i] -= 1;
    r.add_term(d, c * m.exps[i]);
  }
  return r;
}

double MultiPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += c * c;
  return std::sqrt(s);
}

Ray::Ray(Eigen::VectorXd direction) : dir_(std::move(direction)) {
  const double norm = dir_.norm();
  if (!(norm > 1e-300)) throw DimensionMismatch("ray direction must be nonzero");
  if (std::abs(norm - 1.0) > 1e-12) dir_ /= norm;
}

double evaluate(const MultiPoly& p, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != p.n())
    throw DimensionMismatch("evaluate: point dimension does not match");
  const int d = p.degree();
  // Per-variable power tables; Horner on the scattered exponents would walk
  // the map repeatedly, this is one pass.
  std::vector<std::vector<double>> pow(p.n());
  for (int i = 0; i < p.n(); ++i) {
    pow[i].resize(d + 1);
    pow[i][0] = 1.0;
    for (int k = 1; k <= d; ++k) pow[i][k] = pow[i][k - 1] * x[i];
  }
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (int i = 0; i < p.n(); ++i)
      if (m.exps[i] > 0) t *= pow[i][m.exps[i]];
    acc += t;
  }
  return acc;
}

Eigen::VectorXd gradient(const MultiPoly& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd g(p.n());
  for (int i = 0; i < p.n(); ++i) g[i] = evaluate(p.partial(i), x);
  return g;
}

RayRestriction restrict_to_ray(const MultiPoly& p, const Ray& a) {
  if (a.n() != p.n())
    throw DimensionMismatch("restrict_to_ray: ray dimension does not match");
  const int d = p.degree();
  std::vector<double> coeffs(d + 1, 0.0);
  const Eigen::VectorXd& dir = a.direction();
  std::vector<std::vector<double>> pow(p.n());
  for (int i = 0; i < p.n(); ++i) {
    pow[i].resize(d + 1);
    pow[i][0] = 1.0;
    for (int k = 1; k <= d; ++k) pow[i][k] = pow[i][k - 1] * dir[i];
  }
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (int i = 0; i < p.n(); ++i)
      if (m.exps[i] > 0) t *= pow[i][m.exps[i]];
    coeffs[m.total_degree()] += t;
  }
  // Trim the attained degree; the drop is reported, never padded.
  double scale = 0.0;
  for (double c : coeffs) scale += std::abs(c);
  int attained = d;
  while (attained > 0 && std::abs(coeffs[attained]) <= kCoeffZeroTol * (1.0 + scale))
    --attained;
  RayRestriction r;
  r.coeffs.assign(coeffs.begin(), coeffs.begin() + attained + 1);
  r.degree_drop = d - attained;
  return r;
}

MultiPoly comonic_normalize(const MultiPoly& p, double tol) {
  const double c0 = p.constant_term();
  if (std::abs(c0) < tol)
    throw ZeroAtOrigin("comonic_normalize: polynomial vanishes at the origin");
  MultiPoly r = p * (1.0 / c0);
  // Pin the independent term to exactly 1.
  Monomial zero(std::vector<int>(p.n(), 0));
  r.add_term(zero, 1.0 - r.coeff(zero));
  return r;
}

MultiPoly multiply(const MultiPoly& p, const MultiPoly& q) {
  check_same_n(p, q, "multiply");
  MultiPoly r(p.n());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      Monomial m = mp;
      for (int i = 0; i < p.n(); ++i) m.exps[i] += mq.exps[i];
      r.add_term(m, cp * cq);
    }
  }
  return r;
}

MultiPoly homogenize(const MultiPoly& p, int d) {
  if (d < p.degree())
    throw DimensionMismatch("homogenize: target degree below polynomial degree");
  MultiPoly r(p.n() + 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(p.n() + 1);
    e[0] = d - m.total_degree();
    for (int i = 0; i < p.n(); ++i) e[i + 1] = m.exps[i];
    r.add_term(Monomial(e), c);
  }
  return r;
}

namespace {

// Rows of Pascal's triangle, grown on demand.
const std::vector<double>& binomial_row(int n) {
  static std::vector<std::vector<double>> rows = {{1.0}};
  while (static_cast<int>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<double> next(prev.size() + 1, 1.0);
    for (std::size_t k = 1; k + 1 < next.size(); ++k)
      next[k] = prev[k - 1] + prev[k];
    rows.push_back(std::move(next));
  }
  return rows[n];
}

}  // namespace

MultiPoly translate_origin(const MultiPoly& p, const Eigen::VectorXd& x0) {
  if (static_cast<int>(x0.size()) != p.n())
    throw DimensionMismatch("translate_origin: shift dimension does not match");
  MultiPoly r(p.n());
  // Expand each (x_i - s_i)^e by the binomial theorem, term by term.
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::pair<Monomial, double>> expanded = {
        {Monomial(std::vector<int>(p.n(), 0)), c}};
    for (int i = 0; i < p.n(); ++i) {
      const int e = m.exps[i];
      if (e == 0) continue;
      const double s = x0[i];
      const auto& binom = binomial_row(e);
      std::vector<double> shift_pow(e + 1);
      shift_pow[0] = 1.0;
      for (int k = 1; k <= e; ++k) shift_pow[k] = shift_pow[k - 1] * (-s);
      std::vector<std::pair<Monomial, double>> next;
      next.reserve(expanded.size() * (e + 1));
      for (const auto& [mono, coef] : expanded) {
        for (int k = 0; k <= e; ++k) {
          Monomial nm = mono;
          nm.exps[i] += e - k;
          next.emplace_back(std::move(nm), coef * binom[k] * shift_pow[k]);
        }
      }
      expanded = std::move(next);
    }
    for (const auto& [mono, coef] : expanded) r.add_term(mono, coef);
  }
  return r;
}

double evaluate_univariate(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

namespace {

void enumerate_monomials(int n, std::vector<int>& current, int pos, int remaining,
                         std::vector<Monomial>& out) {
  if (pos == n) {
    out.emplace_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[pos] = e;
    enumerate_monomials(n, current, pos + 1, remaining - e, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomial_basis(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> current(n, 0);
  enumerate_monomials(n, current, 0, d, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return GradedLexLess{}(a, b);
  });
  return out;
}

}  // namespace rigidlens

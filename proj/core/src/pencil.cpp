#include "rigidlens/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rigidlens/rng.hpp"

namespace rigidlens {

namespace {

constexpr double kEigenZeroTol = 1e-12;

double eigen_zero_threshold(const Eigen::VectorXd& eigenvalues) {
  const double spread = eigenvalues.cwiseAbs().maxCoeff();
  return kEigenZeroTol * (1.0 + spread);
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (!m.allFinite())
    throw NonFiniteObjective("symmetric eigensolve on non-finite matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NonFiniteObjective("symmetric eigensolve failed to converge");
  return es.eigenvalues();
}

}  // namespace

Pencil::Pencil(int n, int N) : n_(n), N_(N) {
  if (n < 0 || N < 0) throw DimensionMismatch("pencil sizes must be >= 0");
  A_.assign(n, Eigen::MatrixXd::Zero(N, N));
}

Pencil::Pencil(std::vector<Eigen::MatrixXd> matrices) : A_(std::move(matrices)) {
  n_ = static_cast<int>(A_.size());
  N_ = n_ == 0 ? 0 : static_cast<int>(A_.front().rows());
  for (auto& a : A_) {
    if (a.rows() != N_ || a.cols() != N_)
      throw DimensionMismatch("pencil matrices must be square of equal size");
    a = ((a + a.transpose()) / 2.0).eval();
  }
}

void Pencil::bump(int i, int r, int c, double delta) {
  A_[i](r, c) += delta;
  if (r != c) A_[i](c, r) += delta;
}

Eigen::MatrixXd Pencil::direction_matrix(const Ray& a) const {
  if (a.n() != n_) throw DimensionMismatch("ray dimension does not match pencil");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N_, N_);
  for (int i = 0; i < n_; ++i) m += a.direction()[i] * A_[i];
  return m;
}

MultiPoly det_poly(const Pencil& P, int cap) {
  const int N = P.size();
  if (N > cap)
    throw SizeCapExceeded("det_poly: pencil size exceeds the expansion cap");
  const int n = P.n();
  if (N == 0) return MultiPoly::constant(n, 1.0);

  // Entry (i,j) of I + sum x_k A_k as a degree <= 1 polynomial.
  std::vector<std::vector<MultiPoly>> entry(N, std::vector<MultiPoly>(N, MultiPoly(n)));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      MultiPoly e(n);
      if (i == j) e.add_term(Monomial(std::vector<int>(n, 0)), 1.0);
      for (int k = 0; k < n; ++k) {
        const double c = P.matrix(k)(i, j);
        if (c != 0.0) {
          std::vector<int> exps(n, 0);
          exps[k] = 1;
          e.add_term(Monomial(exps), c);
        }
      }
      entry[i][j] = std::move(e);
    }
  }

  // Laplace expansion memoized on the column subset; the row is implied by
  // the subset size, so 2^N states cover the whole recursion.
  std::vector<std::optional<MultiPoly>> memo(std::size_t{1} << N);
  auto det_of = [&](auto&& self, std::uint32_t cols) -> const MultiPoly& {
    auto& slot = memo[cols];
    if (slot) return *slot;
    const int m = std::popcount(cols);
    if (m == 0) {
      slot = MultiPoly::constant(n, 1.0);
      return *slot;
    }
    const int row = N - m;
    MultiPoly acc(n);
    int sign = 1;
    for (int j = 0; j < N; ++j) {
      if (!(cols & (1u << j))) continue;
      if (!entry[row][j].is_zero()) {
        const MultiPoly& sub = self(self, cols & ~(1u << j));
        MultiPoly term = multiply(entry[row][j], sub);
        acc = (sign > 0) ? acc + term : acc - term;
      }
      sign = -sign;
    }
    slot = std::move(acc);
    return *slot;
  };
  return det_of(det_of, (std::uint32_t{1} << N) - 1);
}

PencilRayRoots ray_roots(const Pencil& P, const Ray& a) {
  const Eigen::VectorXd lambda = symmetric_eigenvalues(P.direction_matrix(a));
  const double zero = eigen_zero_threshold(lambda);
  PencilRayRoots r;
  for (int i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda[i]) <= zero)
      ++r.degree_drop;
    else
      r.roots.push_back(-1.0 / lambda[i]);
  }
  std::sort(r.roots.begin(), r.roots.end());
  return r;
}

double spectrahedral_radius(const Pencil& P, const Ray& a) {
  const Eigen::VectorXd lambda = symmetric_eigenvalues(P.direction_matrix(a));
  if (lambda.size() == 0) return std::numeric_limits<double>::infinity();
  const double zero = eigen_zero_threshold(lambda);
  const double lambda_min = lambda.minCoeff();
  if (lambda_min < -zero) return -1.0 / lambda_min;
  return std::numeric_limits<double>::infinity();
}

Pencil direct_sum(const Pencil& S, const Pencil& T) {
  if (S.n() != T.n())
    throw DimensionMismatch("direct_sum: variable counts differ");
  const int N = S.size() + T.size();
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(S.n());
  for (int i = 0; i < S.n(); ++i) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N, N);
    b.topLeftCorner(S.size(), S.size()) = S.matrix(i);
    b.bottomRightCorner(T.size(), T.size()) = T.matrix(i);
    blocks.push_back(std::move(b));
  }
  if (S.n() == 0) return Pencil(0, N);
  return Pencil(std::move(blocks));
}

Pencil diag_pencil(const std::vector<LinearForm>& forms, int n) {
  const int N = static_cast<int>(forms.size());
  for (const auto& f : forms)
    if (f.n() != n)
      throw DimensionMismatch("diag_pencil: form dimension does not match");
  Pencil p(n, N);
  std::vector<Eigen::MatrixXd> mats(n, Eigen::MatrixXd::Zero(N, N));
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < n; ++i) mats[i](j, j) = forms[j].gradient[i];
  if (n == 0) return p;
  return Pencil(std::move(mats));
}

std::int64_t hv_size(int n, int d) {
  if (n < 1 || d < 1) throw DimensionMismatch("hv_size: need n >= 1 and d >= 1");
  const int top = n + d / 2;
  // C(top, n) with overflow guard, exact at every step.
  std::int64_t r = 1;
  for (int i = 1; i <= n; ++i) {
    const std::int64_t num = top - n + i;
    if (r > std::numeric_limits<std::int64_t>::max() / num)
      throw Error("hv_size: binomial overflows int64");
    r = r * num / i;
  }
  if (r > std::numeric_limits<std::int64_t>::max() / 2)
    throw Error("hv_size: result overflows int64");
  return 2 * r;
}

Pencil random_symmetric_pencil(int n, int N, std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd b(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) b(i, j) = uniform_pm1(rng);
    mats.push_back(std::move(b));
  }
  if (n == 0) return Pencil(0, N);
  return Pencil(std::move(mats));  // constructor symmetrizes
}

Pencil random_compact_pencil(int n, int N, std::uint64_t seed,
                             const std::vector<Ray>& probe_rays,
                             int max_attempts) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Pencil p = random_symmetric_pencil(n, N, rng);
    bool compact = true;
    for (const auto& a : probe_rays) {
      // Finite in both orientations: M(a) must be indefinite.
      const Eigen::VectorXd lambda = symmetric_eigenvalues(p.direction_matrix(a));
      const double zero = eigen_zero_threshold(lambda);
      if (!(lambda.minCoeff() < -zero && lambda.maxCoeff() > zero)) {
        compact = false;
        break;
      }
    }
    if (compact) return p;
  }
  throw Error("random_compact_pencil: no compact draw within max_attempts");
}

}  // namespace rigidlens

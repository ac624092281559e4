#ifndef RIGIDLENS_PENCIL_HPP
#define RIGIDLENS_PENCIL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "rigidlens/multipoly.hpp"

namespace rigidlens {

/// Exact symbolic determinant expansion is refused above this size by
/// default; the sizes the theory asks for are astronomical, and callers
/// beyond the cap must fall back to ray-sampled eigenvalue comparisons.
inline constexpr int kDetCap = 12;

/// Comonic affine form l(x) = 1 + <gradient, x>.
struct LinearForm {
  Eigen::VectorXd gradient;

  double operator()(const Eigen::VectorXd& x) const {
    return 1.0 + gradient.dot(x);
  }
  int n() const { return static_cast<int>(gradient.size()); }
};

/// Monic symmetric linear matrix pencil I_N + sum_i x_i A_i.
/// Coefficient matrices are symmetrized on ingestion (A <- (A+A^T)/2), since
/// text round-trips lose exact symmetry.
class Pencil {
 public:
  Pencil(int n, int N);
  explicit Pencil(std::vector<Eigen::MatrixXd> matrices);

  int n() const { return n_; }
  int size() const { return N_; }
  const Eigen::MatrixXd& matrix(int i) const { return A_[i]; }
  const std::vector<Eigen::MatrixXd>& matrices() const { return A_; }

  /// Symmetric update of entry (r,c) and (c,r) of A_i by +delta.
  void bump(int i, int r, int c, double delta);

  /// M(a) = sum_i a_i A_i.
  Eigen::MatrixXd direction_matrix(const Ray& a) const;

 private:
  int n_ = 0;
  int N_ = 0;
  std::vector<Eigen::MatrixXd> A_;
};

/// Real line roots of det(I + t M(a)) obtained from the symmetric
/// eigenvalues of M(a): one root -1/lambda per nonzero eigenvalue, sorted
/// ascending; zero eigenvalues count toward degree_drop.
struct PencilRayRoots {
  std::vector<double> roots;
  int degree_drop = 0;
};

/// Exact multivariate determinant of the pencil, expanded over the
/// polynomial ring (memoized Laplace over column subsets). Result is
/// comonic. Throws SizeCapExceeded when N > cap.
MultiPoly det_poly(const Pencil& P, int cap = kDetCap);

PencilRayRoots ray_roots(const Pencil& P, const Ray& a);

/// sup{t >= 0 : I + t M(a) is PSD} = -1/lambda_min(M(a)) when
/// lambda_min < 0, +inf otherwise.
double spectrahedral_radius(const Pencil& P, const Ray& a);

/// Block-diagonal concatenation; det(S (+) T) = det(S) det(T).
Pencil direct_sum(const Pencil& S, const Pencil& T);

/// Diagonal pencil of comonic linear forms: size = form count,
/// (A_i)_jj = gradient component i of form j, determinant = product of the
/// forms. The variable count must be passed explicitly so the empty cover
/// still yields a well-typed size-0 pencil.
Pencil diag_pencil(const std::vector<LinearForm>& forms, int n);

/// 2 * C(n + floor(d/2), n), the universal representation size for degree-d
/// polynomials in n variables. Throws on int64 overflow.
std::int64_t hv_size(int n, int d);

/// Entries i.i.d. uniform [-1,1], symmetrized.
Pencil random_symmetric_pencil(int n, int N, std::mt19937_64& rng);

/// Rejection-samples random pencils until the spectrahedron is compact on
/// the probe rays (finite radius along both orientations of every probe).
/// Deterministic in seed. Throws after max_attempts rejections.
Pencil random_compact_pencil(int n, int N, std::uint64_t seed,
                             const std::vector<Ray>& probe_rays,
                             int max_attempts = 2000);

}  // namespace rigidlens

#endif  // RIGIDLENS_PENCIL_HPP

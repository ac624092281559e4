#ifndef RIGIDLENS_ROOTLINE_HPP
#define RIGIDLENS_ROOTLINE_HPP

#include <complex>
#include <vector>

#include "rigidlens/multipoly.hpp"

namespace rigidlens {

/// Default relative tolerance for snapping near-real roots to the real axis.
/// The RZ verdict hinges on this value, so it is the single knob passed
/// through every root-based operation.
inline constexpr double kRealSnapTol = 1e-9;

/// Roots below this distance from t=0 contradict comonicity (p(0)=1) and are
/// rejected rather than snapped.
inline constexpr double kNearOriginTol = 1e-12;

/// Ordered roots of one ray restriction.
///
/// real_roots ordering depends on the mode requested from root_profile:
///   full_line_order=false: positive-semiline roots ascending (closest to
///     farthest from the origin), then the opposite semiline's roots by
///     ascending distance;
///   full_line_order=true: all real roots by ascending signed t, the
///     parametrization order of the half-sphere line metric.
/// complex_roots holds one representative (positive imaginary part) per
/// conjugate pair. |real_roots| + 2|complex_roots| + degree_drop = degree(p).
struct RootProfile {
  Ray direction;
  std::vector<double> real_roots;
  std::vector<std::complex<double>> complex_roots;
  int degree_drop = 0;
  bool full_line_order = false;

  /// Roots with t > 0, ascending.
  std::vector<double> positive_semiline() const;
  /// Distances |t| of roots with t < 0, ascending (the opposite semiline
  /// traversed away from the origin).
  std::vector<double> opposite_semiline() const;
  /// All real roots by ascending signed t.
  std::vector<double> full_line() const;
  /// All roots of the restriction over the complex line, conjugates expanded.
  std::vector<std::complex<double>> all_complex() const;
};

/// All roots, with multiplicity, of a univariate real polynomial given as a
/// coefficient list (lowest degree first). Companion-matrix eigenvalues with
/// one Newton polish step per root. Roots with |imag| <= tol*(1+|real|) are
/// snapped to the real axis. Throws ZeroPolynomial on an all-zero list.
std::vector<std::complex<double>> univariate_roots(std::vector<double> coeffs,
                                                   double tol = kRealSnapTol);

/// Restriction of p along a followed by univariate_roots, assembled into an
/// ordered profile. Requires p comonic: p(0)=1 forbids roots at t=0, so a
/// real root within kNearOriginTol of the origin throws ZeroAtOrigin.
/// half=true orders real_roots by signed t (full-line parametrization).
RootProfile root_profile(const MultiPoly& p, const Ray& a,
                         double tol = kRealSnapTol, bool half = false);

/// True iff the profile carries no complex conjugate pairs.
bool is_real_rooted(const RootProfile& profile);

}  // namespace rigidlens

#endif  // RIGIDLENS_ROOTLINE_HPP

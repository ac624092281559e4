#ifndef RIGIDLENS_VERIGLC_HPP
#define RIGIDLENS_VERIGLC_HPP

#include <optional>
#include <vector>

#include "rigidlens/deform.hpp"

namespace rigidlens {

/// One oriented semiline of the verification sweep. gap is exactly
/// rcs_radius - spectrahedral_radius: no hidden normalization, treated as 0
/// when both radii are infinite and as +/-inf when only one is.
struct RayComparison {
  Ray direction;
  double rcs_radius = 0.0;
  double spectrahedral_radius = 0.0;
  double gap = 0.0;
};

/// Desk-scale certificate that a pencil realizes the target polynomial's
/// rigidly convex set. pass requires the radius profiles to agree within tol
/// on every sampled semiline, the cofactor residual to stay within tol_div,
/// and the determinant to be sampled-RZ. One-sided infinite radii fail their
/// ray: infinities compare equal only to infinities.
struct VerificationReport {
  std::vector<RayComparison> rows;  // per sample index: +a then -a
  double max_abs_gap = 0.0;
  bool contains_p_in_pencil = false;
  bool contains_pencil_in_p = false;
  std::optional<MultiPoly> cofactor;
  double cofactor_residual = 0.0;
  bool cofactor_exact_route = false;  // false: ray-sampled divisibility value
  bool det_rz = false;
  bool pass = false;
  double tol = 0.0;
  double tol_div = 0.0;
};

/// Compares rcs radii of p against spectrahedral radii of P along every
/// sampled oriented semiline. Up to det_cap the cofactor is extracted
/// exactly from the expanded determinant and the determinant is fed through
/// the sampled RZ check; beyond the cap the divisibility figure falls back
/// to the ray-sampled nearest-root measure and RZ-ness holds by symmetry.
VerificationReport verify_representation(const MultiPoly& p, const Pencil& P,
                                         const RaySample& rays,
                                         double tol = 1e-6,
                                         double tol_div = 1e-8,
                                         int det_cap = kDetCap);

}  // namespace rigidlens

#endif  // RIGIDLENS_VERIGLC_HPP

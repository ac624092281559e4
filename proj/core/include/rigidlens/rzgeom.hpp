#ifndef RIGIDLENS_RZGEOM_HPP
#define RIGIDLENS_RZGEOM_HPP

#include <complex>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rigidlens/rays.hpp"
#include "rigidlens/rootline.hpp"

namespace rigidlens {

/// Default half-sphere sample density for n=2,3.
inline constexpr int kDefaultRayCount = 256;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Outcome of a sampled real-zero check. A false verdict always carries a
/// witness ray whose restriction has the offending complex root. This is a
/// Monte-Carlo/grid certificate over the sampled lines, not a proof.
struct RzVerdict {
  bool is_rz = false;
  std::optional<std::pair<Ray, std::complex<double>>> witness;
  int rays_checked = 0;
  double tol = kRealSnapTol;
};

/// Radial structure of the zero set along one direction: the first positive
/// zero bounds the rigidly convex set, the full ascending list walks the
/// nested ovaloids (multiplicity counted). rcs_radius is +inf when the ray
/// never meets the zero set, which flags a non-compact slice.
struct RadialSlice {
  Ray direction;
  double rcs_radius = kInf;
  std::vector<double> ovaloid_radii;
};

/// Verdict of a sampled radial containment check, with the worst oriented
/// direction and its gap (positive gap = violation by that amount).
struct RcsContainment {
  bool contained = false;
  std::optional<Ray> worst_ray;
  double worst_gap = -kInf;
};

/// Result of the openness probe: the largest perturbation norm delta found
/// by bracketed bisection for which every sampled perturbation stayed RZ.
struct OpennessProbe {
  bool found = false;
  double delta = 0.0;
  int trials = 0;
  int bisection_steps = 0;
};

/// Sampled RZ check: every ray restriction must be real rooted (degree drops
/// allowed). Requires p comonic. The witness, when present, is the lowest-
/// index failing ray.
RzVerdict is_rz(const MultiPoly& p, const std::vector<Ray>& rays,
                double tol = kRealSnapTol);

/// Same check along lines through x0 instead of the origin. Requires
/// p(x0) != 0 (throws BasePointOnZeroSet); by the line-translation
/// equivalence the verdict must agree with is_rz.
RzVerdict is_rz_from_point(const MultiPoly& p, const Eigen::VectorXd& x0,
                           const std::vector<Ray>& rays,
                           double tol = kRealSnapTol);

/// Positive zeros of the restriction along a, ascending. Throws
/// NonRealRooted when the restriction has complex roots.
RadialSlice radial_slice(const MultiPoly& p, const Ray& a,
                         double tol = kRealSnapTol);

/// First positive and first opposite-semiline zero distance along the line
/// spanned by a (each +inf when absent). Shared helper for containment and
/// verification sweeps.
std::pair<double, double> rcs_radii_both(const MultiPoly& p, const Ray& a,
                                         double tol = kRealSnapTol);

/// Sampled check of rcs(inner) within rcs(outer): along every sampled
/// oriented semiline, inner's radius must not exceed outer's by more than
/// tol. One-sided infinities count as violations.
RcsContainment rcs_contains(const MultiPoly& inner, const MultiPoly& outer,
                            const std::vector<Ray>& rays, double tol);

/// Heuristic smoothness probe: min of the gradient norm over all sampled
/// zero-set points (+inf if the sample never meets the zero set). Reported
/// as a diagnostic; no genericity claim attaches to it.
double smoothness_probe(const MultiPoly& p, const std::vector<Ray>& rays,
                        double tol = kRealSnapTol);

/// Openness probe: fixes `trials` random unit coefficient directions (over
/// the monomial basis up to degree(p)), then brackets and bisects the
/// largest delta such that p + delta*dir stays sampled-RZ for all of them.
OpennessProbe rz_openness_probe(const MultiPoly& p, const std::vector<Ray>& rays,
                                double tol = kRealSnapTol, int trials = 20,
                                std::uint64_t seed = 1, double delta_init = 0.1,
                                int bisection_steps = 12);

}  // namespace rigidlens

#endif  // RIGIDLENS_RZGEOM_HPP

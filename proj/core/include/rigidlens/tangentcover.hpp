#ifndef RIGIDLENS_TANGENTCOVER_HPP
#define RIGIDLENS_TANGENTCOVER_HPP

#include <vector>

#include "rigidlens/pencil.hpp"
#include "rigidlens/rootline.hpp"

namespace rigidlens {

/// Finite family of comonic linear forms tangent to the real zero set,
/// grouped into diagonal-pencil blocks.
///
/// Two coverage figures are reported: max_base_point_residual is the largest
/// |l_u(u)| over the emitted forms (tangency audit, ~0 by construction), and
/// probe_coverage is the largest distance from a zero point of a denser
/// probe sample to its nearest form hyperplane, which measures how well the
/// finite cover tracks the parts of the zero set the sample missed.
struct TangentCover {
  std::vector<Eigen::VectorXd> base_points;
  std::vector<Eigen::VectorXd> gradients;  // grad p at each base point
  std::vector<LinearForm> forms;
  std::vector<std::vector<int>> blocks;
  int skipped_through_origin = 0;
  double max_base_point_residual = 0.0;
  double probe_coverage = 0.0;
};

/// All ray-root positions t*a across the sampled lines (both semilines, all
/// ovaloids), deduplicated within 1e-8. Only real roots contribute; complex
/// roots have no point on V.
std::vector<Eigen::VectorXd> sample_zero_points(const MultiPoly& p,
                                                const std::vector<Ray>& rays,
                                                double tol = kRealSnapTol);

/// Comonic form tangent to {p=0} at u: l(x) = 1 - <g,x>/<g,u> with
/// g = grad p(u), so l(u)=0, l(0)=1 and the zero set of l is the tangent
/// hyperplane. Throws SingularPoint when the gradient is below smooth_tol,
/// TangentThroughOrigin when <g,u> vanishes (no comonic normalization
/// exists), and Error when u is not a zero point within zero_tol.
LinearForm tangent_form(const MultiPoly& p, const Eigen::VectorXd& u,
                        double zero_tol = 1e-8, double smooth_tol = 1e-8);

/// One tangent form per sampled zero point, grouped into blocks of
/// block_size in sample order (last block ragged). Points whose tangent
/// passes through the origin are skipped and counted, never perturbed.
/// probe_multiplier scales the denser zero sample used for the coverage
/// figure.
TangentCover build_cover(const MultiPoly& p, const std::vector<Ray>& rays,
                         int block_size, double tol = kRealSnapTol,
                         int probe_multiplier = 16);

}  // namespace rigidlens

#endif  // RIGIDLENS_TANGENTCOVER_HPP

#ifndef RIGIDLENS_RAYS_HPP
#define RIGIDLENS_RAYS_HPP

#include <vector>

#include "rigidlens/multipoly.hpp"

namespace rigidlens {

/// A finite set of half-sphere directions with per-ray cell measures.
/// Each direction stands for the full line it spans; weights sum to the
/// surface measure of the half sphere.
struct RaySample {
  std::vector<Ray> directions;
  std::vector<double> weights;

  std::size_t size() const { return directions.size(); }
};

/// Surface measure of half of S^{n-1}: pi^{n/2} / Gamma(n/2).
/// n=2 gives pi, n=3 gives 2*pi.
double half_sphere_measure(int n);

/// Deterministic low-discrepancy directions on the half sphere
/// (first nonzero coordinate positive). n=2 uses equispaced line angles,
/// n=3 a Fibonacci hemisphere, higher n a Halton-driven Gaussian map.
std::vector<Ray> half_sphere_rays(int n, int count);

/// Voronoi-cell measures for an arbitrary direction set, under the line
/// metric (antipodes identified). Exact arcs for n=2, deterministic probe
/// counting otherwise. Sum equals half_sphere_measure(n).
std::vector<double> line_voronoi_weights(const std::vector<Ray>& rays);

/// half_sphere_rays + line_voronoi_weights in one call.
RaySample sample_half_sphere(int n, int count);

}  // namespace rigidlens

#endif  // RIGIDLENS_RAYS_HPP

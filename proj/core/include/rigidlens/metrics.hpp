#ifndef RIGIDLENS_METRICS_HPP
#define RIGIDLENS_METRICS_HPP

#include <cmath>
#include <complex>
#include <functional>

#include "rigidlens/rays.hpp"
#include "rigidlens/rootline.hpp"

namespace rigidlens {

enum class DistanceMode { Coefficient, RootOrdered, RootOrderedHalf, RadialNearest };

/// Compensated (Neumaier) accumulator; per-ray metric terms are summed
/// through this so totals reproduce to 1e-12 regardless of fan-out.
class NeumaierSum {
 public:
  void add(double v) {
    if (!std::isfinite(v) || !std::isfinite(sum_)) {
      sum_ += v;
      return;
    }
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return std::isfinite(sum_) ? sum_ + comp_ : sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MetricConfig {
  double u = 1.0;  // exponent, >= 1
  RaySample rays;
  DistanceMode mode = DistanceMode::RadialNearest;
  /// Distance on the complex plane used by the radial measure; empty means
  /// Euclidean |a-b|.
  std::function<double(std::complex<double>, std::complex<double>)> complex_metric;
  double tol = kRealSnapTol;
};

/// u-norm of the coefficient difference over the monomial basis:
/// (sum_m |coeff(m,p)-coeff(m,q)|^u)^(1/u).
double coeff_distance(const MultiPoly& p, const MultiPoly& q, double u);

/// Ordered root-matching measure, quadrature over the sampled lines.
///   RootOrdered: integrates over the full sphere; per direction each
///     semiline contributes sum_i |rt_i(a,p)-rt_i(a,q)|^u with roots ordered
///     closest to farthest from the origin.
///   RootOrderedHalf: integrates over the half sphere with full-line root
///     lists ordered by signed t.
/// Sums truncate when either ordered list runs out. Inputs must be RZ along
/// every sampled ray (NonRealRooted otherwise): without real roots there is
/// no ordering. No outer 1/u is applied (the measure is not a norm).
double root_distance(const MultiPoly& p, const MultiPoly& q,
                     const MetricConfig& config);

/// Radial nearest-root measure over the half sphere: for the lower-degree
/// input, every root of its line restriction (complex included) contributes
/// its distance to the nearest root of the other's restriction. Defined for
/// all polynomials; vanishes when one divides the other. Equal-degree ties
/// pick the canonically smaller term map so argument order never matters.
double radial_distance(const MultiPoly& p, const MultiPoly& q,
                       const MetricConfig& config);

/// Per-ray cell measures for an arbitrary direction set; nonnegative, sum
/// equal to the half-sphere surface measure.
std::vector<double> finite_sample_weights(const std::vector<Ray>& rays);

/// Dispatch on config.mode.
double distance(const MultiPoly& p, const MultiPoly& q, const MetricConfig& config);

}  // namespace rigidlens

#endif  // RIGIDLENS_METRICS_HPP

#include "rigidlens/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rigidlens {

namespace {

constexpr double kPi = std::numbers::pi;

// Halton sequence, index starts at 1.
double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

Eigen::VectorXd halton_gaussian(std::size_t index, int n) {
  // Box-Muller on consecutive Halton dimensions.
  Eigen::VectorXd v(n);
  int k = 0;
  for (int i = 0; i + 1 < n; i += 2) {
    const double u1 = halton(index + 1, kPrimes[k++]);
    const double u2 = halton(index + 1, kPrimes[k++]);
    const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
    v[i] = r * std::cos(2.0 * kPi * u2);
    v[i + 1] = r * std::sin(2.0 * kPi * u2);
  }
  if (n % 2 == 1) {
    const double u1 = halton(index + 1, kPrimes[k++]);
    const double u2 = halton(index + 1, kPrimes[k++]);
    const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
    v[n - 1] = r * std::cos(2.0 * kPi * u2);
  }
  return v;
}

void flip_to_half(Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > 0.0) return;
    if (v[i] < 0.0) {
      v = -v;
      return;
    }
  }
}

std::vector<Eigen::VectorXd> raw_half_directions(int n, int count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  if (n == 1) {
    for (int k = 0; k < count; ++k) out.push_back(Eigen::VectorXd::Ones(1));
    return out;
  }
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double theta = -kPi / 2 + kPi * (k + 0.5) / count;
      Eigen::VectorXd v(2);
      v << std::cos(theta), std::sin(theta);
      out.push_back(v);
    }
    return out;
  }
  if (n == 3) {
    // Fibonacci hemisphere around e1, all first coordinates positive.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < count; ++k) {
      const double c = (k + 0.5) / count;  // in (0,1)
      const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double phi = 2.0 * kPi * std::fmod(k / golden, 1.0);
      Eigen::VectorXd v(3);
      v << c, r * std::cos(phi), r * std::sin(phi);
      out.push_back(v);
    }
    return out;
  }
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd v = halton_gaussian(static_cast<std::size_t>(k), n);
    if (v.norm() < 1e-12) v = Eigen::VectorXd::Unit(n, 0);
    v.normalize();
    flip_to_half(v);
    out.push_back(v);
  }
  return out;
}

// Exact arc Voronoi on the projective circle (circumference pi).
std::vector<double> arc_weights(const std::vector<Ray>& rays) {
  const std::size_t k = rays.size();
  if (k == 1) return {kPi};
  std::vector<std::pair<double, std::size_t>> angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& d = rays[i].direction();
    double th = std::atan2(d[1], d[0]);
    th = std::fmod(th, kPi);
    if (th < 0) th += kPi;
    angles[i] = {th, i};
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> w(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double prev = (i == 0) ? angles[k - 1].first - kPi : angles[i - 1].first;
    const double next = (i + 1 == k) ? angles[0].first + kPi : angles[i + 1].first;
    w[angles[i].second] = (next - prev) / 2.0;
  }
  return w;
}

}  // namespace

double half_sphere_measure(int n) {
  if (n < 1) throw DimensionMismatch("half_sphere_measure: n must be >= 1");
  return std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

std::vector<Ray> half_sphere_rays(int n, int count) {
  if (n < 1) throw DimensionMismatch("half_sphere_rays: n must be >= 1");
  if (count < 1) throw DimensionMismatch("half_sphere_rays: count must be >= 1");
  std::vector<Ray> rays;
  rays.reserve(count);
  for (auto& v : raw_half_directions(n, count)) rays.emplace_back(std::move(v));
  return rays;
}

std::vector<double> line_voronoi_weights(const std::vector<Ray>& rays) {
  if (rays.empty()) throw DimensionMismatch("line_voronoi_weights: empty ray set");
  const int n = rays.front().n();
  for (const auto& r : rays)
    if (r.n() != n) throw DimensionMismatch("line_voronoi_weights: mixed dimensions");
  if (n == 1) {
    std::vector<double> w(rays.size(), 0.0);
    w[0] = half_sphere_measure(1);
    return w;
  }
  if (n == 2) return arc_weights(rays);

  // Probe counting: assign each probe direction to the nearest sampled line
  // (largest |dot|), each probe carrying an equal share of the measure.
  const std::size_t k = rays.size();
  const int probes = std::max<int>(8192, 64 * static_cast<int>(k));
  const auto probe_dirs = raw_half_directions(n, probes);
  std::vector<std::size_t> counts(k, 0);
  for (const auto& p : probe_dirs) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double d = std::abs(p.dot(rays[i].direction()));
      if (d > best) {
        best = d;
        best_i = i;
      }
    }
    counts[best_i] += 1;
  }
  const double share = half_sphere_measure(n) / probes;
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = counts[i] * share;
  return w;
}

RaySample sample_half_sphere(int n, int count) {
  RaySample s;
  s.directions = half_sphere_rays(n, count);
  s.weights = line_voronoi_weights(s.directions);
  return s;
}

}  // namespace rigidlens

#include <benchmark/benchmark.h>

#include <random>

#include "rigidlens/deform.hpp"
#include "rigidlens/metrics.hpp"
#include "rigidlens/pencil.hpp"
#include "rigidlens/rng.hpp"
#include "rigidlens/rootline.hpp"
#include "rigidlens/rzgeom.hpp"

using namespace rigidlens;

namespace {

MultiPoly dense_poly(int n, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MultiPoly p(n);
  for (const auto& m : monomial_basis(n, degree)) p.add_term(m, uniform_pm1(rng));
  p.add_term(Monomial(std::vector<int>(n, 0)), 2.0);  // keep p(0) nonzero
  return comonic_normalize(p);
}

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
  const auto p = dense_poly(3, static_cast<int>(state.range(0)), 1);
  Eigen::VectorXd x(3);
  x << 0.3, -0.4, 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, x));
}
BENCHMARK(BM_Evaluate)->Arg(4)->Arg(8)->Arg(12);

static void BM_Multiply(benchmark::State& state) {
  const auto p = dense_poly(2, static_cast<int>(state.range(0)), 2);
  const auto q = dense_poly(2, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(p, q));
}
BENCHMARK(BM_Multiply)->Arg(4)->Arg(8);

static void BM_UnivariateRoots(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<double> coeffs(state.range(0) + 1);
  for (auto& c : coeffs) c = uniform_pm1(rng);
  coeffs.back() = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(univariate_roots(coeffs));
}
BENCHMARK(BM_UnivariateRoots)->Arg(4)->Arg(8)->Arg(16)->Arg(30);

static void BM_RayRoots(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int N = static_cast<int>(state.range(0));
  const Pencil P = random_symmetric_pencil(3, N, rng);
  const Ray a(Eigen::Vector3d(1.0, 0.5, -0.25));
  for (auto _ : state) benchmark::DoNotOptimize(ray_roots(P, a));
}
BENCHMARK(BM_RayRoots)->Arg(4)->Arg(16)->Arg(64);

static void BM_DetPoly(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const int N = static_cast<int>(state.range(0));
  const Pencil P = random_symmetric_pencil(2, N, rng);
  for (auto _ : state) benchmark::DoNotOptimize(det_poly(P));
}
BENCHMARK(BM_DetPoly)->Arg(2)->Arg(4)->Arg(8)->Arg(10);

static void BM_IsRz(benchmark::State& state) {
  const auto p = dense_poly(2, 4, 7);
  const auto rays = half_sphere_rays(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_rz(p, rays));
}
BENCHMARK(BM_IsRz)->Arg(64)->Arg(256);

static void BM_FitObjective(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const auto rays = sample_half_sphere(2, 64);
  const Pencil P = random_compact_pencil(2, 4, 9, rays.directions);
  const auto p = det_poly(P);
  Pencil moved = P;
  moved.bump(0, 0, 1, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(fit_objective(moved, p, rays));
}
BENCHMARK(BM_FitObjective);

BENCHMARK_MAIN();

#include <cmath>
#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "dualalpha/alpha_builder.hpp"
#include "dualalpha/dual_qp.hpp"
#include "dualalpha/homology.hpp"
#include "dualalpha/oracle.hpp"

namespace {

using namespace dualalpha;

PointMatrix sphere(std::size_t n) {
  PointMatrix p(static_cast<Eigen::Index>(n), 3);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(1.0 - z * z);
    const auto row = static_cast<Eigen::Index>(i);
    p.row(row) << r * std::cos(golden * i), r * std::sin(golden * i), z;
  }
  return p;
}

PointMatrix cube(std::size_t n, Eigen::Index m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointMatrix p(static_cast<Eigen::Index>(n), m);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < m; ++j) p(i, j) = unit(rng);
  }
  return p;
}

void BM_SphereBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // About 1.8 times the mean spacing of n quasi-uniform points.
  const double r = 1.8 * std::sqrt(4.0 / static_cast<double>(n));
  const auto pts = WeightedPoints::unweighted(sphere(n), r * r);
  BuildParams params;
  params.max_dim = 3;
  params.threads = static_cast<unsigned>(state.range(1));
  std::size_t simplices = 0;
  for (auto _ : state) {
    auto a = build_alpha(pts, params);
    simplices = a.complex.total_size();
    benchmark::DoNotOptimize(a);
  }
  state.counters["simplices"] = static_cast<double>(simplices);
}
BENCHMARK(BM_SphereBuild)->Args({500, 1})->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);

void BM_CubeBuild(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  const auto pts = WeightedPoints::unweighted(cube(400, m, 1), 0.015 * static_cast<double>(m));
  BuildParams params;
  params.max_dim = static_cast<int>(m);
  for (auto _ : state) benchmark::DoNotOptimize(build_alpha(pts, params));
}
BENCHMARK(BM_CubeBuild)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_DualSolve(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(n, 4, [&] { return normal(rng); });
  const Eigen::VectorXd U = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
  const Eigen::MatrixXd B = A * A.transpose();
  DualSolver solver;
  const std::vector<int> J{0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(B, U, J, 1e300));
}
BENCHMARK(BM_DualSolve)->RangeMultiplier(2)->Range(8, 128);

void BM_BoundaryRank(benchmark::State& state) {
  const auto pts = WeightedPoints::unweighted(sphere(2000), 0.01);
  BuildParams params;
  params.max_dim = 3;
  const auto a = build_alpha(pts, params);
  const auto d2 = boundary_matrix(a.complex, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rank_fp(d2));
  state.counters["nonzeros"] = static_cast<double>(d2.nonzeros());
}
BENCHMARK(BM_BoundaryRank)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto pts = WeightedPoints::unweighted(cube(static_cast<std::size_t>(state.range(0)), 3, 3), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(brute_alpha(pts, 3));
}
BENCHMARK(BM_Oracle)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <cmath>

#include <benchmark/benchmark.h>

#include "acl/expansion.hpp"
#include "acl/ground_state.hpp"
#include "acl/solver.hpp"

using namespace acl;

namespace {

ProblemParams problem(double alpha, double eps) {
  ProblemParams pp;
  pp.alpha = alpha;
  pp.eps = annulus_eps(1, alpha, eps);
  return pp;
}

void BM_ShootGroundState(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shoot_ground_state(d, 2.0));
}
BENCHMARK(BM_ShootGroundState)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_LaplaceBeltrami(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  auto f = make_grid(problem(0.0, eps), {});
  for (std::size_t i = 0; i < f.ns(); ++i)
    for (std::size_t j = 0; j < f.nt(); ++j) f.at(i, j) = std::exp(-f.s[i]) * std::cos(f.t[j]);
  for (auto _ : state) benchmark::DoNotOptimize(laplace_beltrami(f));
  state.counters["nodes"] = static_cast<double>(f.v.size());
}
BENCHMARK(BM_LaplaceBeltrami)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GammaEpsOfZ(benchmark::State& state) {
  const auto geom = ReducedGeometry::from(problem(0.0, 0.05));
  TestFunctionParams tf;
  tf.side = Side::inner;
  tf.ground = GroundState::compute(3, 2.0, geom.kappa_inner);
  tf.eps = 0.04;
  for (auto _ : state) benchmark::DoNotOptimize(gamma_eps_of_Z(tf, geom));
}
BENCHMARK(BM_GammaEpsOfZ)->Unit(benchmark::kMillisecond);

void BM_SolveMountainPass(benchmark::State& state) {
  const auto pp = problem(0.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_mountain_pass(pp));
}
BENCHMARK(BM_SolveMountainPass)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

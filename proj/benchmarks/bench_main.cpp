#include "infoprice/corpus.hpp"
#include "infoprice/dynprog.hpp"
#include "infoprice/lp.hpp"
#include "infoprice/shadow.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace infoprice;

namespace {

// Random bounded LP: box rows plus dense cuts through a feasible point.
lp::LpProblem randomLp(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  lp::LpProblem p(n);
  for (int j = 0; j < n; ++j) p.c(j) = u(rng);
  p.G = MatrixXd::Zero(2 * n + m, n);
  p.g = VectorXd::Ones(2 * n + m);
  p.G.topRows(n).setIdentity();
  p.G.middleRows(n, n) = -MatrixXd::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) p.G(2 * n + i, j) = u(rng);
    p.g(2 * n + i) = 0.5 + 0.5 * (u(rng) + 1.0);
  }
  return p;
}

void BM_LpSolve(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto p = randomLp(n, 2 * n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(p).objective);
  state.SetComplexityN(n);
}
BENCHMARK(BM_LpSolve)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SolvePrimal(benchmark::State& state) {
  const auto program = toProgram(corpus::random(static_cast<std::uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solvePrimal(program).value);
}
BENCHMARK(BM_SolvePrimal)->DenseRange(1000, 1004)->Unit(benchmark::kMillisecond);

void BM_SolveDual(benchmark::State& state) {
  const auto program = toProgram(corpus::random(static_cast<std::uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solveDual(program).value);
}
BENCHMARK(BM_SolveDual)->DenseRange(1000, 1004)->Unit(benchmark::kMillisecond);

void BM_PrimalRecursion(benchmark::State& state) {
  const auto program = toProgram(corpus::random(static_cast<std::uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(primalRecursion(program).value);
}
BENCHMARK(BM_PrimalRecursion)->DenseRange(1000, 1004)->Unit(benchmark::kMillisecond);

void BM_Conjugate(benchmark::State& state) {
  const auto program = toProgram(corpus::random(static_cast<std::uint64_t>(state.range(0))));
  const auto& h = program.integrand(0);
  const VectorXd v = VectorXd::Constant(h.dim(), 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(conjugate(h), v));
}
BENCHMARK(BM_Conjugate)->DenseRange(1000, 1004)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

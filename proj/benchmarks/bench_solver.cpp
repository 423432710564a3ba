#include <benchmark/benchmark.h>

#include "rschain/core_analysis.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/solutions.hpp"

using namespace rschain;

static void BM_SolveGrandCoalition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RSSituation sit = random_situation(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(solve_coalition(sit, Coalition::retailers(n)).value);
}
BENCHMARK(BM_SolveGrandCoalition)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_BuildGame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RSSituation sit = random_situation(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_game(sit).v(Coalition::grand(n)));
}
BENCHMARK(BM_BuildGame)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static RSGame synthetic_game(int n) {
  std::vector<double> v(std::size_t{1} << (n + 1));
  for (std::size_t m = 1; m < v.size(); ++m) v[m] = static_cast<double>(std::popcount(m)) * 10.0 + (m & 1u ? 5.0 : 0.0);
  return RSGame(n, v);
}

static void BM_Shapley(benchmark::State& state) {
  const RSGame g = synthetic_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shapley(g).payoffs.data());
}
BENCHMARK(BM_Shapley)->DenseRange(2, 11, 3);

static void BM_Mgpc(benchmark::State& state) {
  const RSGame g = synthetic_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mgpc(g).beta);
}
BENCHMARK(BM_Mgpc)->DenseRange(2, 11, 3);

static void BM_CoreMembership(benchmark::State& state) {
  const RSGame g = synthetic_game(static_cast<int>(state.range(0)));
  const Allocation x = mgpc(g).allocation;
  for (auto _ : state) benchmark::DoNotOptimize(in_core_full(g, x).member);
}
BENCHMARK(BM_CoreMembership)->DenseRange(2, 11, 3);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "rank2/generators.hpp"
#include "rank2/optimize.hpp"
#include "rank2/sampling.hpp"

using namespace rank2;

namespace {

ChartPoint fixture_point(Shape sh) {
  rng::SplitMix gen(5);
  return random_interior_point(sh, gen);
}

void BM_ChartForward(benchmark::State& state) {
  const Shape sh{static_cast<int>(state.range(0)),
                 static_cast<int>(state.range(1))};
  const ChartPoint p = fixture_point(sh);
  for (auto _ : state)
    benchmark::DoNotOptimize(chart_forward(ChartId{1, 2}, p));
}
BENCHMARK(BM_ChartForward)->Args({3, 3})->Args({5, 8})->Args({10, 20});

void BM_ChartInverse(benchmark::State& state) {
  const Shape sh{static_cast<int>(state.range(0)),
                 static_cast<int>(state.range(1))};
  const auto P = chart_forward(ChartId{1, 2}, fixture_point(sh));
  for (auto _ : state)
    benchmark::DoNotOptimize(chart_inverse(ChartId{1, 2}, P));
}
BENCHMARK(BM_ChartInverse)->Args({3, 3})->Args({5, 8})->Args({10, 20});

void BM_FactorizeRank2(benchmark::State& state) {
  const Shape sh{static_cast<int>(state.range(0)),
                 static_cast<int>(state.range(1))};
  rng::SplitMix gen(7);
  const auto P = mixture_to_matrix(random_mixture(sh, 2, gen));
  for (auto _ : state) benchmark::DoNotOptimize(factorize_rank2(P));
}
BENCHMARK(BM_FactorizeRank2)->Args({3, 3})->Args({5, 8})->Args({10, 20});

void BM_MaximizeOverModel(benchmark::State& state) {
  rng::SplitMix gen(11);
  const auto rep = random_mixture(Shape{3, 3}, 2, gen);
  const auto table = sample_table(rep, SampleSpec{1000, 3});
  OptimizerSettings settings;
  settings.multistarts = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize_over_model(table, settings));
}
BENCHMARK(BM_MaximizeOverModel)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();

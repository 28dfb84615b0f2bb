#include <benchmark/benchmark.h>

#include <rumorlab/adversary.hpp>
#include <rumorlab/estimators.hpp>
#include <rumorlab/spreading.hpp>
#include <rumorlab/timestamp_rumor_centrality.hpp>

using namespace rumorlab;

static void timestamp_rumor_centrality_d4(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  SpreadParams params;
  params.horizon = Horizon::until(t);
  Rng rng(11);
  for (auto _ : state) {
    state.PauseTiming();
    Graph g = lazy_regular_tree(4);
    auto obs = observe_eavesdropper(simulate(g, params, rng), t, true);
    state.ResumeTiming();
    benchmark::DoNotOptimize(timestamp_rumor_centrality_scores(obs, g, 1, t).size());
  }
}
BENCHMARK(timestamp_rumor_centrality_d4)->Arg(5)->Arg(6);

static void ball_centrality_d4(benchmark::State& state) {
  const int t = 5;
  SpreadParams params;
  params.horizon = Horizon::until(t);
  Rng rng(12);
  for (auto _ : state) {
    state.PauseTiming();
    Graph g = lazy_regular_tree(4);
    auto obs = observe_eavesdropper(simulate(g, params, rng), t);
    state.ResumeTiming();
    benchmark::DoNotOptimize(ball_centrality(obs, g, rng).chosen);
  }
}
BENCHMARK(ball_centrality_d4);

static void reporting_centrality_k500(benchmark::State& state) {
  SpreadParams params;
  params.protocol = Protocol::diffusion;
  params.horizon = Horizon::infections(500);
  Rng rng(13);
  for (auto _ : state) {
    state.PauseTiming();
    Graph g = lazy_regular_tree(5);
    auto trace = simulate(g, params, rng);
    auto obs = observe_eavesdropper(trace, trace.stop_time);
    state.ResumeTiming();
    benchmark::DoNotOptimize(reporting_centrality(obs, g, rng).chosen);
  }
}
BENCHMARK(reporting_centrality_k500);

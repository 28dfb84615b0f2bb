#include <benchmark/benchmark.h>

#include <rumorlab/spreading.hpp>

using namespace rumorlab;

static void diffusion_to_k_infections(benchmark::State& state) {
  SpreadParams params;
  params.protocol = Protocol::diffusion;
  params.horizon = Horizon::infections(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  for (auto _ : state) {
    Graph g = lazy_regular_tree(5);
    benchmark::DoNotOptimize(simulate(g, params, rng).size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(diffusion_to_k_infections)->Arg(100)->Arg(500)->Arg(2000);

static void trickle_to_time(benchmark::State& state) {
  SpreadParams params;
  params.protocol = Protocol::trickle;
  params.horizon = Horizon::until(static_cast<double>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) {
    Graph g = lazy_regular_tree(4);
    benchmark::DoNotOptimize(simulate(g, params, rng).size());
  }
}
BENCHMARK(trickle_to_time)->Arg(4)->Arg(8)->Arg(12);

static void trickle_first_report(benchmark::State& state) {
  SpreadParams params;
  params.protocol = Protocol::trickle;
  params.theta = 1;
  Rng rng(3);
  for (auto _ : state) {
    Graph g = lazy_regular_tree(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(first_report_trial(g, params, rng).infected);
  }
}
BENCHMARK(trickle_first_report)->Arg(4)->Arg(16)->Arg(64);

static void diffusion_first_report_random_regular(benchmark::State& state) {
  Graph g = build_random_regular(2000, 8, 9);
  SpreadParams params;
  params.protocol = Protocol::diffusion;
  params.theta = static_cast<double>(state.range(0));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(first_report_trial(g, params, rng).infected);
}
BENCHMARK(diffusion_first_report_random_regular)->Arg(1)->Arg(8);

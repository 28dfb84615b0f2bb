#include <benchmark/benchmark.h>

#include <rumorlab/analytics.hpp>
#include <rumorlab/special_functions.hpp>

using namespace rumorlab;

static void exponential_integral_sweep(benchmark::State& state) {
  for (auto _ : state)
    for (double x = -50; x <= 50; x += 0.37) benchmark::DoNotOptimize(exponential_integral(x));
}
BENCHMARK(exponential_integral_sweep);

static void reg_inc_beta_half_sweep(benchmark::State& state) {
  for (auto _ : state)
    for (double a = 0.01; a < 100; a *= 1.7) benchmark::DoNotOptimize(reg_inc_beta_half(a, 1 + a));
}
BENCHMARK(reg_inc_beta_half_sweep);

static void trickle_ft_bound(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trickle_ft_lower_bound(d, 1).value);
}
BENCHMARK(trickle_ft_bound)->Arg(4)->Arg(64)->Arg(1024);

static void diffusion_ft_tree_integral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(diffusion_ft_tree(6, 1.5, 6).value);
}
BENCHMARK(diffusion_ft_tree_integral);

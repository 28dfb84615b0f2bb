#include <doctest.h>

#include <rumorlab/adversary.hpp>
#include <rumorlab/graph.hpp>

#include <algorithm>
#include <cmath>

using namespace rumorlab;

namespace {

SpreadTrace handmade_trace() {
  SpreadTrace trace;
  trace.protocol = Protocol::trickle;
  trace.source = 0;
  trace.add(0, kNoNode, 0).reports = {2};
  trace.add(1, 0, 1).reports = {3, 5};
  trace.add(2, 1, 4);
  trace.stop_time = 6;
  return trace;
}

SpreadTrace diffusion_trace(std::uint64_t seed, std::size_t k) {
  Graph g = lazy_regular_tree(4);
  SpreadParams p;
  p.protocol = Protocol::diffusion;
  p.horizon = Horizon::infections(k);
  Rng rng(seed);
  return simulate_diffusion(g, p, rng);
}

}  // namespace

TEST_SUITE("adversary") {

TEST_CASE("eavesdropper at time 0 sees nothing") {
  auto obs = observe_eavesdropper(handmade_trace(), 0);
  CHECK(obs.eavesdropper().first.empty());
  CHECK(obs.observed_until == 0);
}

TEST_CASE("eavesdropper keeps only the first report up to t") {
  auto obs = observe_eavesdropper(handmade_trace(), 4);
  const auto& view = obs.eavesdropper();
  CHECK(view.first.at(1) == 3);
  CHECK(view.first.at(0) == 2);
  CHECK_FALSE(view.first.contains(2));
  CHECK(view.all.empty());

  auto full = observe_eavesdropper(handmade_trace(), 4, true);
  CHECK(full.eavesdropper().all.at(1) == std::vector<double>{3});
  auto later = observe_eavesdropper(handmade_trace(), 10, true);
  CHECK(later.eavesdropper().all.at(1) == std::vector<double>{3, 5});
}

TEST_CASE("eavesdropper at infinity sees every reporting node") {
  Graph g = build_regular_tree(3, 3);
  SpreadParams p;
  p.protocol = Protocol::diffusion;
  Rng rng(3);
  auto trace = simulate_diffusion(g, p, rng);
  auto obs = observe_eavesdropper(trace, kForever);
  CHECK(obs.eavesdropper().first.size() == g.node_count());
  for (auto [v, tau] : obs.eavesdropper().first) CHECK(tau > trace.find(v)->time);
}

TEST_CASE("the wrong view accessor throws") {
  auto obs = observe_snapshot(handmade_trace(), 1);
  CHECK_THROWS_AS(obs.eavesdropper(), std::invalid_argument);
  CHECK_THROWS_AS(obs.spy(), std::invalid_argument);
  CHECK_NOTHROW(obs.snapshot());
}

TEST_CASE("spy extremes") {
  auto trace = diffusion_trace(1, 40);
  Rng rng(1);
  auto all = observe_spy(trace, 1.0, kForever, rng);
  CHECK(all.spy().spies.size() == trace.size() - 1);
  for (const auto& s : all.spy().spies) CHECK(s.node != trace.source);
  auto none = observe_spy(trace, 0.0, kForever, rng);
  CHECK(none.spy().spies.empty());
  CHECK_THROWS_AS(observe_spy(trace, 1.5, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(observe_spy(trace, -0.1, 1, rng), std::invalid_argument);
}

TEST_CASE("spy fraction concentrates at p") {
  auto trace = diffusion_trace(2, 10001);
  Rng rng(2);
  auto obs = observe_spy(trace, 0.3, kForever, rng);
  double fraction = static_cast<double>(obs.spy().spies.size()) / 10000.0;
  CHECK(std::abs(fraction - 0.3) <= 0.015);
}

TEST_CASE("spies leak exact times and the delivering neighbour in time order") {
  auto trace = diffusion_trace(3, 200);
  Rng rng(3);
  double t = trace.infected[120].time;
  auto obs = observe_spy(trace, 0.5, t, rng);
  const auto& spies = obs.spy().spies;
  CHECK(std::is_sorted(spies.begin(), spies.end(),
                       [](const auto& a, const auto& b) { return a.time < b.time; }));
  for (const auto& s : spies) {
    const auto* rec = trace.find(s.node);
    CHECK(s.time == rec->time);
    CHECK(s.sender == rec->parent);
    CHECK(s.time <= t);
  }
}

TEST_CASE("snapshot is the infected set at T") {
  auto trace = diffusion_trace(4, 300);
  auto zero = observe_snapshot(trace, 0);
  CHECK(zero.snapshot().infected == std::vector<NodeId>{trace.source});
  auto all = observe_snapshot(trace, trace.stop_time);
  CHECK(all.snapshot().infected.size() == trace.size());

  std::vector<NodeId> previous;
  for (double T : {0.1, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    auto obs = observe_snapshot(trace, T);
    const auto& now = obs.snapshot().infected;
    CHECK(std::is_sorted(now.begin(), now.end()));
    CHECK(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
    for (NodeId v : now) CHECK(trace.find(v)->time <= T);
    previous = now;
  }
}

TEST_CASE("diffusion report delays pass a Kolmogorov–Smirnov test against Exp(θ)") {
  const double theta = 1.5;
  std::vector<double> delays;
  Graph g = build_regular_tree(3, 7);
  for (int i = 0; delays.size() < 100000; ++i) {
    SpreadParams p;
    p.protocol = Protocol::diffusion;
    p.theta = theta;
    Rng rng = Rng::for_trial(5, i);
    auto trace = simulate_diffusion(g, p, rng);
    auto obs = observe_eavesdropper(trace, kForever);
    for (auto [v, tau] : obs.eavesdropper().first) delays.push_back(tau - trace.find(v)->time);
  }
  std::sort(delays.begin(), delays.end());
  double n = static_cast<double>(delays.size()), ks = 0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    double cdf = 1 - std::exp(-theta * delays[i]);
    ks = std::max({ks, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
  }
  CHECK(ks < 0.01);
}

TEST_CASE("first report observation") {
  FirstReport first{{3, 7}, 4.0, 12};
  auto obs = observe_first_reports(first, Protocol::trickle);
  CHECK(obs.observed_until == 4.0);
  CHECK(obs.eavesdropper().first.size() == 2);
  CHECK(obs.eavesdropper().first.at(7) == 4.0);
}

}  // TEST_SUITE

#include <doctest.h>

#include <rumorlab/harness.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace rumorlab;

namespace {

ExperimentSpec diffusion_ft_spec(int d, double theta, std::size_t trials) {
  ExperimentSpec spec;
  spec.graph.d = d;
  spec.spread.protocol = Protocol::diffusion;
  spec.spread.theta = theta;
  spec.trials = trials;
  spec.master_seed = 42;
  spec.workers = 1;
  return spec;
}

ExperimentSpec trickle_spec(Method estimator, int d, int t, std::size_t trials) {
  ExperimentSpec spec;
  spec.graph.d = d;
  spec.spread.protocol = Protocol::trickle;
  spec.spread.theta = 1;
  spec.spread.horizon = Horizon::until(t);
  spec.estimator = estimator;
  spec.trials = trials;
  spec.master_seed = 9;
  spec.workers = 1;
  return spec;
}

void check_same(const DetectionReport& a, const DetectionReport& b) {
  CHECK(a.hits == b.hits);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  CHECK(a.strict_win_rate == b.strict_win_rate);
  CHECK(a.diagnostics.no_estimate == b.diagnostics.no_estimate);
  CHECK(a.diagnostics.source_in_candidates == b.diagnostics.source_in_candidates);
  CHECK(a.diagnostics.mean_stop_time == b.diagnostics.mean_stop_time);
  CHECK(a.diagnostics.mean_infected == b.diagnostics.mean_infected);
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("Wilson interval") {
  // Hand-computed: p = 0.5, n = 100, z = 1.96 gives 0.5 ± 0.0962.
  auto ci = wilson_interval(50, 100);
  CHECK(ci.low == doctest::Approx(0.403831).epsilon(1e-5));
  CHECK(ci.high == doctest::Approx(0.596169).epsilon(1e-5));
  auto zero = wilson_interval(0, 10);
  CHECK(zero.low == 0.0);
  CHECK(zero.high == doctest::Approx(0.277533).epsilon(1e-5));
  auto all = wilson_interval(10, 10);
  CHECK(all.high == doctest::Approx(1.0).epsilon(1e-15));
  double previous = 1.0;
  for (std::size_t n : {100, 400, 1600, 6400}) {
    auto c = wilson_interval(n / 4, n);
    double width = c.high - c.low;
    CHECK(width < previous);
    previous = width;
  }
}

TEST_CASE("a huge report rate makes the source report first") {
  ExperimentSpec spec;
  spec.graph.d = 4;
  spec.spread.protocol = Protocol::trickle;
  spec.spread.theta = 100000;
  spec.trials = 1;
  spec.workers = 1;
  auto report = run_experiment(spec);
  CHECK(report.hits == 1);
}

TEST_CASE("diffusion first-timestamp detection matches the closed form") {
  auto spec = diffusion_ft_spec(4, 1, 5000);
  spec.graph.source_degree = 2;
  auto report = run_experiment(spec);
  REQUIRE(report.theory.has_value());
  CHECK(report.theory->formula == Formula::diffusion_ft_tree);
  CHECK(report.theory->value == doctest::Approx(std::log(3.0) / 2).epsilon(1e-9));
  CHECK(std::abs(report.p_hat - report.theory->value) < 0.03);
  CHECK(report.ci_low <= report.p_hat);
  CHECK(report.p_hat <= report.ci_high);
  CHECK(report.hits <= report.trials);
}

TEST_CASE("the same spec gives the same report at any worker count") {
  auto spec = diffusion_ft_spec(4, 1, 3000);
  auto a = run_experiment(spec);
  auto b = run_experiment(spec);
  check_same(a, b);
  spec.workers = 4;
  check_same(a, run_experiment(spec));

  auto ball = trickle_spec(Method::ball_centrality, 3, 4, 500);
  auto c = run_experiment(ball);
  ball.workers = 3;
  check_same(c, run_experiment(ball));
}

TEST_CASE("strict wins never exceed tie-broken detection") {
  for (int d : {3, 4, 8}) {
    ExperimentSpec spec;
    spec.graph.d = d;
    spec.spread.protocol = Protocol::trickle;
    spec.spread.theta = 1;
    spec.trials = 2000;
    spec.workers = 1;
    auto report = run_experiment(spec);
    REQUIRE(report.strict_win_rate.has_value());
    CHECK(*report.strict_win_rate <= report.p_hat);
    REQUIRE(report.theory.has_value());
    CHECK(report.theory->formula == Formula::trickle_ft_lb);
  }
}

TEST_CASE("ball centrality always keeps the source among its candidates") {
  auto report = run_experiment(trickle_spec(Method::ball_centrality, 3, 4, 1000));
  CHECK(report.diagnostics.source_in_candidates == 1000);
  CHECK(report.diagnostics.max_candidates >= 1);
  REQUIRE(report.theory.has_value());
  CHECK(report.theory->formula == Formula::trickle_ml_lb);
}

TEST_CASE("timestamp rumor centrality stays within the ML bounds") {
  auto report = run_experiment(trickle_spec(Method::timestamp_rumor_centrality, 3, 4, 300));
  double se = std::sqrt(0.25 / 300);
  CHECK(report.p_hat >= trickle_ml_lower(3, 1, 4).value - 3 * se);
  CHECK(report.p_hat <= trickle_ml_upper(3, 1).value + 3 * se);
}

TEST_CASE("spy experiments") {
  ExperimentSpec spec;
  spec.graph.d = 4;
  spec.spread.protocol = Protocol::diffusion;
  spec.spread.horizon = Horizon::infections(100);
  spec.adversary.model = AdversaryModel::spy;
  spec.adversary.p = 0.5;
  spec.estimator = Method::spy_first_timestamp;
  spec.trials = 1000;
  spec.workers = 1;
  auto report = run_experiment(spec);
  CHECK(report.p_hat >= 0.45);
  REQUIRE(report.theory.has_value());
  CHECK(report.theory->value == 0.5);

  spec.estimator = Method::reporting_centrality;
  auto rc = run_experiment(spec);
  CHECK(rc.diagnostics.max_candidates <= 1);
  CHECK(rc.hits + rc.diagnostics.no_estimate <= rc.trials);
}

TEST_CASE("generated graphs start at node 0 and edge lists at a random node") {
  ExperimentSpec spec;
  spec.graph.model = GraphModel::random_regular;
  spec.graph.d = 4;
  spec.graph.n = 200;
  spec.spread.protocol = Protocol::diffusion;
  spec.trials = 200;
  spec.workers = 1;
  CHECK(run_experiment(spec).trials == 200);
  for (std::size_t i = 0; i < 5; ++i) CHECK(trace_for_trial(spec, i).source == 0);

  auto path = std::filesystem::temp_directory_path() / "rumorlab_harness_ring.edges";
  {
    std::ofstream out(path);
    for (int i = 0; i < 30; ++i) out << i << ' ' << (i + 1) % 30 << '\n';
  }
  spec.graph.model = GraphModel::edge_list;
  spec.graph.path = path.string();
  std::set<NodeId> sources;
  for (std::size_t i = 0; i < 40; ++i) sources.insert(trace_for_trial(spec, i).source);
  CHECK(sources.size() > 10);
  CHECK_FALSE(theory_for(spec).has_value());
  CHECK(run_experiment(spec).trials == 200);
  std::filesystem::remove(path);
}

TEST_CASE("spec validation") {
  auto bad = trickle_spec(Method::ball_centrality, 4, 5, 10);
  bad.spread.protocol = Protocol::diffusion;
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);

  auto no_t = trickle_spec(Method::ball_centrality, 4, 5, 10);
  no_t.spread.horizon = Horizon{};
  CHECK_THROWS_AS(validate(no_t), std::invalid_argument);

  auto short_t = trickle_spec(Method::timestamp_rumor_centrality, 4, 4, 10);
  CHECK_THROWS_AS(validate(short_t), std::invalid_argument);
  auto wide = trickle_spec(Method::timestamp_rumor_centrality, 8, 9, 10);
  CHECK_THROWS_AS(validate(wide), std::invalid_argument);

  auto zero = diffusion_ft_spec(4, 1, 0);
  CHECK_THROWS_AS(validate(zero), std::invalid_argument);

  auto snap = diffusion_ft_spec(4, 1, 10);
  snap.adversary.model = AdversaryModel::snapshot;
  CHECK_THROWS_AS(validate(snap), std::invalid_argument);

  auto unbounded = diffusion_ft_spec(4, 1, 10);
  unbounded.estimator = Method::reporting_centrality;
  CHECK_THROWS_AS(validate(unbounded), std::invalid_argument);

  auto spy = diffusion_ft_spec(4, 1, 10);
  spy.adversary.model = AdversaryModel::spy;
  spy.adversary.p = 2;
  spy.estimator = Method::spy_first_timestamp;
  spy.spread.horizon = Horizon::infections(10);
  CHECK_THROWS_AS(validate(spy), std::invalid_argument);

  auto degree_on_explicit = diffusion_ft_spec(4, 1, 10);
  degree_on_explicit.graph.model = GraphModel::regular_tree;
  degree_on_explicit.graph.source_degree = 2;
  CHECK_THROWS_AS(validate(degree_on_explicit), std::invalid_argument);

  CHECK_THROWS_AS(parse_estimator("magic"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_model("torus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_adversary("oracle"), std::invalid_argument);
  CHECK(parse_estimator("reporting-centrality") == Method::reporting_centrality);
}

TEST_CASE("a missing edge list fails before any trial runs") {
  ExperimentSpec spec;
  spec.graph.model = GraphModel::edge_list;
  spec.graph.path = "/nonexistent/graph.edges";
  spec.spread.protocol = Protocol::diffusion;
  spec.trials = 5;
  CHECK_THROWS_AS(run_experiment(spec), GraphError);
}

TEST_CASE("sweep over θ is nondecreasing for diffusion first-timestamp") {
  auto base = diffusion_ft_spec(4, 1, 4000);
  std::vector<double> thetas{1, 2, 4, 8};
  auto reports = sweep(base, "theta", thetas);
  REQUIRE(reports.size() == 4);
  for (std::size_t i = 1; i < reports.size(); ++i) {
    CHECK(reports[i].p_hat >= reports[i - 1].p_hat);
    CHECK(reports[i].theory->value > reports[i - 1].theory->value);
  }
}

TEST_CASE("sweep over d is decreasing for diffusion first-timestamp") {
  auto base = diffusion_ft_spec(4, 1, 4000);
  std::vector<double> ds{3, 4, 6, 8};
  auto reports = sweep(base, "d", ds);
  for (std::size_t i = 1; i < reports.size(); ++i) CHECK(reports[i].p_hat < reports[i - 1].p_hat);
}

TEST_CASE("sweep over trials narrows the interval") {
  auto base = diffusion_ft_spec(4, 1, 100);
  std::vector<double> counts{100, 400, 1600};
  auto reports = sweep(base, "trials", counts);
  for (std::size_t i = 1; i < reports.size(); ++i)
    CHECK(reports[i].ci_high - reports[i].ci_low < reports[i - 1].ci_high - reports[i - 1].ci_low);
}

TEST_CASE("sweep axes") {
  auto base = diffusion_ft_spec(4, 1, 10);
  CHECK(with_axis(base, "K", 50).spread.horizon.max_infections == 50u);
  CHECK(with_axis(base, "t", 3.5).spread.horizon.max_time == 3.5);
  CHECK(with_axis(base, "p", 0.25).adversary.p == 0.25);
  CHECK_THROWS_AS(with_axis(base, "d", 2.5), std::invalid_argument);
  std::vector<double> one{1};
  CHECK_THROWS_AS(sweep(base, "lambda", one), std::invalid_argument);
}

TEST_CASE("theory overlay selection") {
  auto ft = diffusion_ft_spec(6, 1, 10);
  ft.graph.model = GraphModel::random_regular;
  ft.graph.n = 100;
  CHECK(theory_for(ft)->formula == Formula::diffusion_ft);

  auto rc = diffusion_ft_spec(5, 1, 10);
  rc.estimator = Method::reporting_centrality;
  CHECK(theory_for(rc)->value == doctest::Approx(reporting_centrality_constant(5).value));

  auto real = diffusion_ft_spec(4, 1, 10);
  real.graph.model = GraphModel::edge_list;
  real.graph.path = "x";
  CHECK_FALSE(theory_for(real).has_value());
}

}  // TEST_SUITE

#include <doctest.h>

#include <oracles.hpp>
#include <rumorlab/analytics.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace rumorlab;

namespace {

// Diffusion first-timestamp detection on a tree whose source has degree d0,
// integrated with a different rule than the library uses.
double diffusion_tree_oracle(int d, double theta, int d0) {
  double k = d - 2, c = theta + k;
  double power = (theta + d0) / c - 1.0;
  auto f = [&](double x) { return std::pow(x, power) * std::pow((k * x + theta) / c, -d0 / k); };
  double tol = 1e-13;
  return theta / c * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 12, tol);
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("trickle first-timestamp bound equals its defining integral") {
  CHECK(std::abs(trickle_ft_lower_bound(4, 1).value - oracle::trickle_ft_integral(4, 1)) <= 1e-6);
  for (int d : {2, 3, 5, 8, 12, 20})
    for (int theta : {1, 2, 4}) {
      CAPTURE(d);
      CAPTURE(theta);
      CHECK(std::abs(trickle_ft_lower_bound(d, theta).value - oracle::trickle_ft_integral(d, theta)) <= 1e-8);
    }
}

TEST_CASE("trickle first-timestamp bound grows with θ up to θ = d") {
  for (int d : {3, 4, 8, 16})
    for (int theta = 1; theta < d; ++theta) {
      CAPTURE(d);
      CAPTURE(theta);
      CHECK(trickle_ft_lower_bound(d, theta + 1).value > trickle_ft_lower_bound(d, theta).value);
    }
  // The bound loosens for large θ: at d = 3 it peaks at θ = 3.
  CHECK(trickle_ft_lower_bound(3, 8).value < trickle_ft_lower_bound(3, 3).value);
}

TEST_CASE("trickle first-timestamp bound approaches ln d / (d ln 2)") {
  double target = std::log(100.0) / (100 * std::numbers::ln2);
  CHECK(std::abs(trickle_ft_lower_bound(100, 1).value - target) <= 0.2 * target);
  CHECK(trickle_ft_asymptotic(2).value == doctest::Approx(0.5));
  double ratio64 = trickle_ft_asymptotic(64).value / trickle_ft_lower_bound(64, 1).value;
  CHECK(ratio64 <= 1.25);
  double ratio512 = trickle_ft_asymptotic(512).value / trickle_ft_lower_bound(512, 1).value;
  CHECK(std::abs(ratio512 - 1) < std::abs(ratio64 - 1));
  CHECK(trickle_ft_lower_bound(5000, 1).value > 0);
}

TEST_CASE("trickle maximum-likelihood bounds") {
  CHECK(trickle_ml_upper(4, 1).value == doctest::Approx(0.6));
  CHECK(trickle_ml_lower(4, 1, 5).value == doctest::Approx(0.6 - std::pow(0.8, 5)));
  CHECK(trickle_ml_lower(4, 1, 5).value == doctest::Approx(0.27232));
  CHECK(trickle_ml_lower(4, 1, 1).value == 0.0);
  for (int d = 2; d <= 64; d *= 2)
    for (int theta : {1, 2, 5, 20})
      for (int t : {1, 3, 10, 40}) {
        CHECK(trickle_ml_upper(d, theta).value > 0.5);
        CHECK(trickle_ml_lower(d, theta, t).value <= trickle_ml_upper(d, theta).value);
      }
}

TEST_CASE("diffusion first-timestamp closed form") {
  CHECK(diffusion_ft(3, 1).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(diffusion_ft(4, 1).value == doctest::Approx(std::log(3.0) / 2).epsilon(1e-12));
  CHECK(diffusion_ft(4, 1e6).value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(diffusion_ft(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(diffusion_ft(4, 0), std::invalid_argument);
}

TEST_CASE("diffusion detection has diminishing returns in θ") {
  for (int d : {3, 4, 8, 16})
    for (double theta = 0.5; theta < 10; theta += 0.5) {
      double lo = diffusion_ft(d, theta).value, mid = diffusion_ft(d, theta + 0.5).value,
             hi = diffusion_ft(d, theta + 1.0).value;
      CHECK(mid > lo);
      CHECK(hi - 2 * mid + lo < 0);
    }
}

TEST_CASE("diffusion and trickle first-timestamp detection are order-equal") {
  for (int d = 8; d <= 512; d *= 2) {
    double ratio = diffusion_ft(d, 1).value / trickle_ft_asymptotic(d).value;
    CAPTURE(d);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
  }
}

TEST_CASE("tree integral reduces to the closed form at source degree d−2") {
  for (int d : {3, 4, 6, 8})
    for (double theta : {0.25, 1.0, 2.0, 5.0}) {
      CAPTURE(d);
      CAPTURE(theta);
      CHECK(diffusion_ft_tree(d, theta, d - 2).value ==
            doctest::Approx(diffusion_ft(d, theta).value).epsilon(1e-9));
    }
}

TEST_CASE("tree integral for a regular source agrees with an independent quadrature") {
  for (int d : {3, 4, 6, 8})
    for (double theta : {1.0, 2.0}) {
      double want = diffusion_tree_oracle(d, theta, d);
      CHECK(diffusion_ft_tree(d, theta, d).value == doctest::Approx(want).epsilon(1e-8));
      CHECK(diffusion_ft_tree(d, theta, d).value < diffusion_ft(d, theta).value);
    }
  CHECK(diffusion_ft_tree(3, 1, 3).value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("reporting centrality constant") {
  CHECK(reporting_centrality_constant(3).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(reporting_centrality_constant(10000).value - 0.307) <= 0.01);
  for (int d : {3, 4, 5, 8, 20, 100}) {
    double a = 1.0 / (d - 2);
    double want = 1 - d * (1 - oracle::ibeta_half(a, 1 + a));
    CAPTURE(d);
    CHECK(std::abs(reporting_centrality_constant(d).value - want) <= 1e-9);
  }
  CHECK_THROWS_AS(reporting_centrality_constant(2), std::invalid_argument);
}

TEST_CASE("spy first-timestamp bound is p") {
  CHECK(spy_ft_bound(0).value == 0);
  CHECK(spy_ft_bound(1).value == 1);
  CHECK(spy_ft_bound(0.3).value == doctest::Approx(0.3));
  CHECK_THROWS_AS(spy_ft_bound(1.2), std::invalid_argument);
}

TEST_CASE("urn first draw is forced and solids never decrease") {
  Rng rng(1);
  auto path = urn_simulate(5, 3, 2000, rng);
  REQUIRE(path.size() == 2001);
  CHECK(path[0].solid == 1);
  CHECK(path[0].striped == 0);
  CHECK(path[1].solid == 4);
  CHECK(path[1].striped == 3);
  for (std::size_t i = 1; i < path.size(); ++i) {
    CHECK(path[i].solid >= path[i - 1].solid);
    CHECK(path[i].striped >= 0);
    CHECK(path[i].striped % 3 == 0);
    CHECK(path[i].draws == static_cast<long long>(i));
  }
}

TEST_CASE("urn ratio converges to θ/(d+θ−2)") {
  CHECK(urn_limit_ratio(4, 2) == doctest::Approx(0.5));
  Rng rng(2);
  auto path = urn_simulate(4, 2, 100000, rng);
  auto ratio = [](const UrnState& s) { return static_cast<double>(s.striped) / s.solid; };
  CHECK(std::abs(ratio(path.back()) - 0.5) <= 0.01);

  double mean = 0, sq = 0;
  std::size_t from = 10000, n = path.size() - from;
  for (std::size_t i = from; i < path.size(); ++i) {
    mean += ratio(path[i]);
    sq += ratio(path[i]) * ratio(path[i]);
  }
  mean /= n;
  CHECK(std::sqrt(sq / n - mean * mean) <= 0.02);
}

TEST_CASE("evaluate dispatches and checks its parameters") {
  CHECK(evaluate(Formula::diffusion_ft, {.d = 4, .theta = 1}).value == doctest::Approx(0.549306).epsilon(1e-6));
  CHECK(evaluate(Formula::trickle_ml_ub, {.d = 4, .theta = 1}).value == doctest::Approx(0.6));
  CHECK(evaluate(Formula::rc_constant, {.d = 3}).value == doctest::Approx(0.25));
  CHECK(evaluate(Formula::diffusion_ft_tree, {.d = 4, .theta = 1, .source_degree = 2}).value ==
        doctest::Approx(std::log(3.0) / 2).epsilon(1e-9));
  CHECK_THROWS_AS(evaluate(Formula::diffusion_ft, {.d = 4}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(Formula::trickle_ft_asym, {.d = std::numbers::e}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(Formula::trickle_ml_lb, {.d = 4, .theta = 1}), std::invalid_argument);

  for (Formula f : all_formulas()) CHECK(parse_formula(to_string(f)) == f);
  CHECK_THROWS_AS(parse_formula("nope"), std::invalid_argument);
}

TEST_CASE("every formula stays inside [0, 1]") {
  for (int d : {3, 4, 8, 50})
    for (int theta : {1, 3, 10})
      for (Formula f : all_formulas()) {
        TheoryParams p{.d = d, .theta = theta, .t = 4, .p = 0.4};
        double v = evaluate(f, p).value;
        CHECK(v >= 0);
        CHECK(v <= 1);
      }
}

}  // TEST_SUITE

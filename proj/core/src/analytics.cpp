#include "rumorlab/analytics.hpp"

#include "rumorlab/special_functions.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace rumorlab {

namespace {

constexpr std::array<std::pair<Formula, std::string_view>, 8> kFormulaNames{{
    {Formula::trickle_ft_lb, "trickle_ft_lb"},
    {Formula::trickle_ft_asym, "trickle_ft_asym"},
    {Formula::trickle_ml_ub, "trickle_ml_ub"},
    {Formula::trickle_ml_lb, "trickle_ml_lb"},
    {Formula::diffusion_ft, "diffusion_ft"},
    {Formula::diffusion_ft_tree, "diffusion_ft_tree"},
    {Formula::rc_constant, "rc_constant"},
    {Formula::spy_ft_lb, "spy_ft_lb"},
}};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

TheoryValue make(Formula f, TheoryParams params, double value) {
  return {f, params, std::clamp(value, 0.0, 1.0)};
}

}  // namespace

std::string_view to_string(Formula f) {
  for (const auto& [id, name] : kFormulaNames)
    if (id == f) return name;
  return "?";
}

Formula parse_formula(std::string_view id) {
  for (const auto& [f, name] : kFormulaNames)
    if (name == id) return f;
  throw std::invalid_argument("unknown formula id '" + std::string(id) + "'");
}

std::vector<Formula> all_formulas() {
  std::vector<Formula> out;
  for (const auto& [f, name] : kFormulaNames) out.push_back(f);
  return out;
}

TheoryValue trickle_ft_lower_bound(int d, int theta) {
  require(d >= 2, "trickle_ft_lb needs d >= 2");
  require(theta >= 1, "trickle_ft_lb needs theta >= 1");
  const double log_rho = std::log(static_cast<double>(d - 1) / (d - 1 + theta));
  // Ei(2^d ln ρ) vanishes for large d; past the clamp it is below e^-700.
  double far = 0.0;
  if (d < 1000) {
    double arg = std::ldexp(log_rho, d);
    if (std::fabs(arg) <= 700.0) far = exponential_integral(arg);
  }
  double value = theta / (d * std::numbers::ln2) * (far - exponential_integral(log_rho));
  return make(Formula::trickle_ft_lb, {.d = d, .theta = theta}, value);
}

TheoryValue trickle_ft_asymptotic(int d) {
  require(d >= 2, "trickle_ft_asym needs d >= 2");
  return make(Formula::trickle_ft_asym, {.d = d}, std::log(d) / (d * std::numbers::ln2));
}

TheoryValue trickle_ml_upper(int d, int theta) {
  require(d >= 2, "trickle_ml_ub needs d >= 2");
  require(theta >= 1, "trickle_ml_ub needs theta >= 1");
  return make(Formula::trickle_ml_ub, {.d = d, .theta = theta},
              1.0 - d / (2.0 * (theta + d)));
}

TheoryValue trickle_ml_lower(int d, int theta, int t) {
  require(d >= 2, "trickle_ml_lb needs d >= 2");
  require(theta >= 1, "trickle_ml_lb needs theta >= 1");
  require(t >= 1, "trickle_ml_lb needs t >= 1");
  double ratio = static_cast<double>(d) / (theta + d);
  double value = 1.0 - d / (2.0 * (theta + d)) - std::pow(ratio, t);
  return make(Formula::trickle_ml_lb, {.d = d, .theta = theta, .t = t}, std::max(0.0, value));
}

TheoryValue diffusion_ft(int d, double theta) {
  require(d > 2, "diffusion_ft needs d > 2");
  require(theta > 0.0, "diffusion_ft needs theta > 0");
  double k = d - 2;
  return make(Formula::diffusion_ft, {.d = d, .theta = theta},
              theta / k * std::log1p(k / theta));
}

TheoryValue diffusion_ft_tree(int d, double theta, int source_degree) {
  require(d > 2, "diffusion_ft_tree needs d > 2");
  require(theta > 0.0, "diffusion_ft_tree needs theta > 0");
  require(source_degree >= 1, "diffusion_ft_tree needs source degree >= 1");
  const double k = d - 2, c = theta + k, d0 = source_degree;
  const double power = (theta + d0) / c - 1.0;
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, power) * std::pow((k * x + theta) / c, -d0 / k);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double integral = integrator.integrate(integrand, 0.0, 1.0);
  return make(Formula::diffusion_ft_tree,
              {.d = d, .theta = theta, .source_degree = source_degree}, theta / c * integral);
}

TheoryValue reporting_centrality_constant(int d) {
  require(d > 2, "rc_constant needs d > 2");
  double a = 1.0 / (d - 2);
  // 1 − I_{1/2}(a, 1 + a) evaluated as I_{1/2}(1 + a, a) to avoid cancellation.
  double tail = reg_inc_beta_half(1.0 + a, a);
  return make(Formula::rc_constant, {.d = d}, 1.0 - d * tail);
}

TheoryValue spy_ft_bound(double p) {
  require(p >= 0.0 && p <= 1.0, "spy_ft_lb needs p in [0, 1]");
  return make(Formula::spy_ft_lb, {.p = p}, p);
}

namespace {

double need(const std::optional<double>& v, const char* name, Formula f) {
  if (!v)
    throw std::invalid_argument(std::string(to_string(f)) + " needs --" + name);
  return *v;
}

int need_int(const std::optional<double>& v, const char* name, Formula f) {
  double x = need(v, name, f);
  if (x != std::floor(x) || std::fabs(x) > 1e9)
    throw std::invalid_argument(std::string(to_string(f)) + " needs an integer " + name);
  return static_cast<int>(x);
}

}  // namespace

TheoryValue evaluate(Formula f, const TheoryParams& p) {
  switch (f) {
    case Formula::trickle_ft_lb:
      return trickle_ft_lower_bound(need_int(p.d, "d", f), need_int(p.theta, "theta", f));
    case Formula::trickle_ft_asym:
      return trickle_ft_asymptotic(need_int(p.d, "d", f));
    case Formula::trickle_ml_ub:
      return trickle_ml_upper(need_int(p.d, "d", f), need_int(p.theta, "theta", f));
    case Formula::trickle_ml_lb:
      return trickle_ml_lower(need_int(p.d, "d", f), need_int(p.theta, "theta", f),
                              need_int(p.t, "t", f));
    case Formula::diffusion_ft:
      return diffusion_ft(need_int(p.d, "d", f), need(p.theta, "theta", f));
    case Formula::diffusion_ft_tree: {
      int d = need_int(p.d, "d", f);
      int d0 = p.source_degree ? need_int(p.source_degree, "source-degree", f) : d;
      return diffusion_ft_tree(d, need(p.theta, "theta", f), d0);
    }
    case Formula::rc_constant:
      return reporting_centrality_constant(need_int(p.d, "d", f));
    case Formula::spy_ft_lb:
      return spy_ft_bound(need(p.p, "p", f));
  }
  throw std::invalid_argument("unknown formula");
}

double urn_limit_ratio(int d, int theta) {
  require(d > 2 && theta >= 1, "urn needs d > 2 and theta >= 1");
  return static_cast<double>(theta) / (d + theta - 2);
}

std::vector<UrnState> urn_simulate(int d, int theta, long long steps, Rng& rng) {
  require(d > 2, "urn needs d > 2");
  require(theta >= 1, "urn needs theta >= 1");
  require(steps >= 0, "urn needs a non-negative number of draws");
  std::vector<UrnState> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  UrnState s;
  path.push_back(s);
  for (long long i = 0; i < steps; ++i) {
    auto total = static_cast<std::size_t>(s.solid + s.striped);
    if (rng.below(total) < static_cast<std::size_t>(s.solid)) {
      s.solid += d - 2;
      s.striped += theta;
    } else {
      if (s.striped < theta) throw std::logic_error("urn would remove more striped balls than it holds");
      s.striped -= theta;
    }
    ++s.draws;
    path.push_back(s);
  }
  return path;
}

}  // namespace rumorlab

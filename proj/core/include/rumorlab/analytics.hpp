#pragma once

#include "rumorlab/rng.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace rumorlab {

enum class Formula {
  trickle_ft_lb,
  trickle_ft_asym,
  trickle_ml_ub,
  trickle_ml_lb,
  diffusion_ft,
  diffusion_ft_tree,
  rc_constant,
  spy_ft_lb,
};

std::string_view to_string(Formula f);
Formula parse_formula(std::string_view id);
std::vector<Formula> all_formulas();

struct TheoryParams {
  std::optional<double> d{};
  std::optional<double> theta{};
  std::optional<double> t{};
  std::optional<double> p{};
  /// Source degree for diffusion_ft_tree; defaults to d.
  std::optional<double> source_degree{};
};

struct TheoryValue {
  Formula formula;
  TheoryParams params;
  double value;
};

/// First-timestamp detection lower bound for trickle on a d-regular tree:
/// θ/(d ln 2)·[Ei(2^d ln ρ) − Ei(ln ρ)] with ρ = (d−1)/(d−1+θ).
TheoryValue trickle_ft_lower_bound(int d, int theta);

/// Large-d behaviour of the trickle bound at θ = 1: ln d / (d ln 2).
TheoryValue trickle_ft_asymptotic(int d);

/// Maximum-likelihood detection bounds for trickle.
TheoryValue trickle_ml_upper(int d, int theta);
TheoryValue trickle_ml_lower(int d, int theta, int t);

/// First-timestamp detection for diffusion: (θ/(d−2))·ln((d+θ−2)/θ).
TheoryValue diffusion_ft(int d, double theta);

/// First-timestamp detection for diffusion on an infinite tree whose nodes
/// have degree d except the source, which has degree d0:
///   (θ/c)∫₀¹ x^{(θ+d0)/c − 1} ((k x + θ)/c)^{−d0/k} dx,  k = d−2, c = θ+k.
/// Equals diffusion_ft(d, θ) when d0 = d − 2.
TheoryValue diffusion_ft_tree(int d, double theta, int source_degree);

/// C_d = 1 − d(1 − I_{1/2}(1/(d−2), 1 + 1/(d−2))).
TheoryValue reporting_centrality_constant(int d);

/// First-timestamp detection lower bound when each node is a spy w.p. p.
TheoryValue spy_ft_bound(double p);

/// Evaluates a formula from loosely typed parameters, checking that the ones
/// it needs are present and integral where required.
TheoryValue evaluate(Formula f, const TheoryParams& params);

struct UrnState {
  long long solid = 1;
  long long striped = 0;
  long long draws = 0;
};

/// Runs the two-colour urn for `steps` draws starting from one solid ball and
/// returns the state after each draw (steps + 1 entries, initial state first).
/// A solid draw adds d−2 solid and θ striped balls; a striped draw removes θ
/// striped balls.
std::vector<UrnState> urn_simulate(int d, int theta, long long steps, Rng& rng);

/// Limit of striped/solid: θ/(d+θ−2).
double urn_limit_ratio(int d, int theta);

}  // namespace rumorlab

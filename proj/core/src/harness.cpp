#include "rumorlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rumorlab {

std::string_view to_string(GraphModel m) {
  switch (m) {
    case GraphModel::lazy_tree: return "lazy-tree";
    case GraphModel::regular_tree: return "regular-tree";
    case GraphModel::random_regular: return "random-regular";
    case GraphModel::edge_list: return "edge-list";
  }
  return "?";
}

GraphModel parse_graph_model(std::string_view name) {
  for (auto m : {GraphModel::lazy_tree, GraphModel::regular_tree, GraphModel::random_regular,
                 GraphModel::edge_list})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown graph model '" + std::string(name) + "'");
}

std::string_view to_string(AdversaryModel m) {
  switch (m) {
    case AdversaryModel::eavesdropper: return "eavesdropper";
    case AdversaryModel::spy: return "spy";
    case AdversaryModel::snapshot: return "snapshot";
  }
  return "?";
}

AdversaryModel parse_adversary(std::string_view name) {
  for (auto m : {AdversaryModel::eavesdropper, AdversaryModel::spy, AdversaryModel::snapshot})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown adversary '" + std::string(name) + "'");
}

Method parse_estimator(std::string_view name) {
  for (auto m : {Method::first_timestamp, Method::spy_first_timestamp, Method::ball_centrality,
                 Method::timestamp_rumor_centrality, Method::reporting_centrality,
                 Method::rumor_center})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

namespace {

bool first_report_shortcut(const ExperimentSpec& spec) {
  return spec.estimator == Method::first_timestamp &&
         spec.adversary.model == AdversaryModel::eavesdropper && !spec.adversary.t;
}

std::optional<int> tree_degree(const GraphSpec& g) {
  if (g.model == GraphModel::edge_list) return std::nullopt;
  return g.d;
}

}  // namespace

void validate(const ExperimentSpec& spec) {
  validate(spec.spread);
  if (spec.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const auto& g = spec.graph;
  if (g.model != GraphModel::edge_list && g.d < 2) throw std::invalid_argument("d must be >= 2");
  if (g.source_degree && g.model != GraphModel::lazy_tree)
    throw std::invalid_argument("a source degree only applies to lazy trees");
  if (g.model == GraphModel::edge_list && g.path.empty())
    throw std::invalid_argument("edge-list graph needs a path");

  const auto adv = spec.adversary.model;
  const bool trickle = spec.spread.protocol == Protocol::trickle;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string(to_string(spec.estimator)) + " estimator: " + why);
  };
  switch (spec.estimator) {
    case Method::first_timestamp:
      if (adv != AdversaryModel::eavesdropper) fail("needs the eavesdropper adversary");
      break;
    case Method::spy_first_timestamp:
      if (adv != AdversaryModel::spy) fail("needs the spy adversary");
      break;
    case Method::ball_centrality:
    case Method::timestamp_rumor_centrality:
      if (!trickle) fail("needs the trickle protocol");
      if (adv != AdversaryModel::eavesdropper) fail("needs the eavesdropper adversary");
      if (!spec.spread.horizon.max_time) fail("needs an estimation time t");
      if (spec.estimator == Method::timestamp_rumor_centrality && g.model != GraphModel::edge_list) {
        if (g.d > spec.trc.max_degree && !spec.trc.allow_large_degree)
          fail("refuses d > " + std::to_string(spec.trc.max_degree) + " unless allowed explicitly");
        if (spec.adversary.t.value_or(*spec.spread.horizon.max_time) < g.d + 1)
          fail("needs t >= d + 1");
      }
      break;
    case Method::reporting_centrality:
      if (adv == AdversaryModel::snapshot) fail("needs an eavesdropper or spy adversary");
      break;
    case Method::rumor_center:
      if (adv != AdversaryModel::snapshot) fail("needs the snapshot adversary");
      break;
  }
  if (adv == AdversaryModel::spy && !(spec.adversary.p >= 0.0 && spec.adversary.p <= 1.0))
    throw std::invalid_argument("spy probability must lie in [0, 1]");
  if (g.model == GraphModel::lazy_tree && !spec.spread.horizon.bounded() &&
      !first_report_shortcut(spec))
    throw std::invalid_argument("an infinite tree needs a horizon (--t or --K)");
}

Interval wilson_interval(std::size_t hits, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = hits / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::optional<TheoryValue> theory_for(const ExperimentSpec& spec) {
  auto d = tree_degree(spec.graph);
  const double theta = spec.spread.theta;
  const bool trickle = spec.spread.protocol == Protocol::trickle;
  const bool integral_theta = theta == std::floor(theta);
  try {
    switch (spec.estimator) {
      case Method::first_timestamp:
        if (!d) return std::nullopt;
        if (trickle) return trickle_ft_lower_bound(*d, static_cast<int>(theta));
        if (spec.graph.model == GraphModel::lazy_tree)
          return diffusion_ft_tree(*d, theta, spec.graph.source_degree.value_or(*d));
        return diffusion_ft(*d, theta);
      case Method::ball_centrality:
        if (!d || !integral_theta) return std::nullopt;
        return trickle_ml_lower(*d, static_cast<int>(theta),
                                static_cast<int>(spec.adversary.t.value_or(*spec.spread.horizon.max_time)));
      case Method::timestamp_rumor_centrality:
        if (!d || !integral_theta) return std::nullopt;
        return trickle_ml_upper(*d, static_cast<int>(theta));
      case Method::reporting_centrality:
      case Method::rumor_center:
        if (!d || *d <= 2) return std::nullopt;
        return reporting_centrality_constant(*d);
      case Method::spy_first_timestamp:
        return spy_ft_bound(spec.adversary.p);
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

LoadedGraph build_graph(const GraphSpec& spec) {
  LoadedGraph out;
  switch (spec.model) {
    case GraphModel::lazy_tree:
      throw std::invalid_argument("lazy trees are built per trial");
    case GraphModel::regular_tree:
      out.graph = build_regular_tree(spec.d, spec.depth);
      break;
    case GraphModel::random_regular:
      out.graph = build_random_regular(spec.n, spec.d, spec.graph_seed);
      break;
    case GraphModel::edge_list:
      return load_edge_list(spec.path);
  }
  for (NodeId v = 0; v < out.graph.node_count(); ++v) out.original_ids.push_back(v);
  return out;
}

namespace {

struct TrialOutcome {
  bool hit = false;
  bool strict = false;
  bool no_estimate = false;
  bool source_in_candidates = false;
  std::size_t candidates = 0;
  double stop_time = 0.0;
  std::size_t infected = 0;
};

Observation observe(const ExperimentSpec& spec, const SpreadTrace& trace, Rng& rng) {
  double t = spec.adversary.t.value_or(trace.stop_time);
  switch (spec.adversary.model) {
    case AdversaryModel::eavesdropper:
      return observe_eavesdropper(trace, t, spec.estimator == Method::timestamp_rumor_centrality);
    case AdversaryModel::spy:
      return observe_spy(trace, spec.adversary.p, t, rng);
    case AdversaryModel::snapshot:
      return observe_snapshot(trace, t);
  }
  throw std::logic_error("unhandled adversary");
}

EstimateResult estimate(const ExperimentSpec& spec, const Observation& obs, Graph& g, Rng& rng) {
  switch (spec.estimator) {
    case Method::first_timestamp: return first_timestamp(obs, rng);
    case Method::spy_first_timestamp: return spy_first_timestamp(obs, rng);
    case Method::ball_centrality: return ball_centrality(obs, g, rng);
    case Method::timestamp_rumor_centrality: {
      int t = static_cast<int>(std::floor(obs.observed_until));
      return timestamp_rumor_centrality(obs, g, static_cast<int>(spec.spread.theta), t, rng, spec.trc);
    }
    case Method::reporting_centrality: return reporting_centrality(obs, g, rng);
    case Method::rumor_center: return rumor_center_estimate(obs, g, rng);
  }
  throw std::logic_error("unhandled estimator");
}

Graph trial_graph(const ExperimentSpec& spec, const Graph* shared) {
  if (shared) return *shared;
  return lazy_regular_tree(spec.graph.d, spec.graph.source_degree.value_or(spec.graph.d));
}

SpreadParams trial_params(const ExperimentSpec& spec, const Graph& g, Rng& rng) {
  SpreadParams params = spec.spread;
  params.source = spec.graph.generated() ? 0 : static_cast<NodeId>(rng.below(g.node_count()));
  return params;
}

TrialOutcome run_trial(const ExperimentSpec& spec, const Graph* shared, std::size_t trial) {
  Rng rng = Rng::for_trial(spec.master_seed, trial);
  Graph g = trial_graph(spec, shared);
  SpreadParams params = trial_params(spec, g, rng);

  TrialOutcome out;
  auto score = [&](const EstimateResult& r) {
    out.candidates = r.candidates.size();
    out.source_in_candidates =
        std::binary_search(r.candidates.begin(), r.candidates.end(), params.source);
    out.hit = r.found() && r.chosen == params.source;
    out.no_estimate = !r.found();
  };

  if (first_report_shortcut(spec)) {
    FirstReport first = first_report_trial(g, params, rng);
    out.infected = first.infected;
    if (!first.time) {
      out.no_estimate = true;
      return out;
    }
    out.stop_time = *first.time;
    EstimateResult r = first_timestamp(observe_first_reports(first, params.protocol), rng);
    score(r);
    out.strict = r.candidates.size() == 1 && r.candidates.front() == params.source;
    return out;
  }

  SpreadTrace trace = simulate(g, params, rng);
  out.stop_time = trace.stop_time;
  out.infected = trace.size();
  Observation obs = observe(spec, trace, rng);
  try {
    EstimateResult r = estimate(spec, obs, g, rng);
    score(r);
    if (spec.estimator == Method::first_timestamp)
      out.strict = r.candidates.size() == 1 && r.candidates.front() == params.source;
  } catch (const NoEstimate&) {
    out.no_estimate = true;
  }
  return out;
}

}  // namespace

DetectionReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  auto started = std::chrono::steady_clock::now();

  std::optional<Graph> shared;
  if (spec.graph.model != GraphModel::lazy_tree) shared = build_graph(spec.graph).graph;

  std::vector<TrialOutcome> outcomes(spec.trials);
  unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.trials));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_trial = 0;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < spec.trials;) {
      try {
        outcomes[i] = run_trial(spec, shared ? &*shared : nullptr, i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error || i < error_trial) {
          error = std::current_exception();
          error_trial = i;
        }
        next.store(spec.trials);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(error_trial) + ": " + e.what());
    }
  }

  DetectionReport report;
  report.spec = spec;
  report.trials = spec.trials;
  std::size_t strict = 0;
  double stop_sum = 0.0, infected_sum = 0.0;
  for (const auto& o : outcomes) {
    report.hits += o.hit;
    strict += o.strict;
    report.diagnostics.no_estimate += o.no_estimate;
    report.diagnostics.source_in_candidates += o.source_in_candidates;
    report.diagnostics.max_candidates = std::max(report.diagnostics.max_candidates, o.candidates);
    stop_sum += o.stop_time;
    infected_sum += static_cast<double>(o.infected);
  }
  const double n = static_cast<double>(spec.trials);
  report.p_hat = report.hits / n;
  auto ci = wilson_interval(report.hits, report.trials);
  report.ci_low = std::min(ci.low, report.p_hat);
  report.ci_high = std::max(ci.high, report.p_hat);
  if (spec.estimator == Method::first_timestamp) report.strict_win_rate = strict / n;
  report.diagnostics.mean_stop_time = stop_sum / n;
  report.diagnostics.mean_infected = infected_sum / n;
  report.theory = theory_for(spec);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

SpreadTrace trace_for_trial(const ExperimentSpec& spec, std::size_t trial) {
  validate(spec);
  std::optional<Graph> shared;
  if (spec.graph.model != GraphModel::lazy_tree) shared = build_graph(spec.graph).graph;
  Rng rng = Rng::for_trial(spec.master_seed, trial);
  Graph g = trial_graph(spec, shared ? &*shared : nullptr);
  SpreadParams params = trial_params(spec, g, rng);
  if (g.is_lazy() && !params.horizon.bounded())
    throw std::invalid_argument("a trace dump on an infinite tree needs a horizon (--t or --K)");
  return simulate(g, params, rng);
}

ExperimentSpec with_axis(const ExperimentSpec& base, std::string_view axis, double value) {
  ExperimentSpec spec = base;
  auto as_int = [&](const char* what) {
    if (value != std::floor(value) || value < 0)
      throw std::invalid_argument(std::string(what) + " values must be non-negative integers");
    return static_cast<long long>(value);
  };
  if (axis == "d") {
    spec.graph.d = static_cast<int>(as_int("d"));
  } else if (axis == "theta") {
    spec.spread.theta = value;
  } else if (axis == "t") {
    spec.spread.horizon.max_time = value;
    if (spec.adversary.t) spec.adversary.t = value;
  } else if (axis == "K") {
    spec.spread.horizon.max_infections = static_cast<std::size_t>(as_int("K"));
  } else if (axis == "p") {
    spec.adversary.p = value;
  } else if (axis == "trials") {
    spec.trials = static_cast<std::size_t>(as_int("trials"));
  } else {
    throw std::invalid_argument("unknown sweep axis '" + std::string(axis) +
                                "' (expected d, theta, t, K, p or trials)");
  }
  return spec;
}

std::vector<DetectionReport> sweep(const ExperimentSpec& base, std::string_view axis,
                                   std::span<const double> values) {
  std::vector<ExperimentSpec> specs;
  for (double v : values) specs.push_back(with_axis(base, axis, v));
  std::vector<DetectionReport> out;
  for (const auto& s : specs) out.push_back(run_experiment(s));
  return out;
}

}  // namespace rumorlab

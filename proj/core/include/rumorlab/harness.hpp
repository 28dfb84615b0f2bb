#pragma once

#include "rumorlab/adversary.hpp"
#include "rumorlab/analytics.hpp"
#include "rumorlab/estimators.hpp"
#include "rumorlab/graph.hpp"
#include "rumorlab/spreading.hpp"
#include "rumorlab/timestamp_rumor_centrality.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rumorlab {

enum class GraphModel { lazy_tree, regular_tree, random_regular, edge_list };

std::string_view to_string(GraphModel m);
GraphModel parse_graph_model(std::string_view name);

struct GraphSpec {
  GraphModel model = GraphModel::lazy_tree;
  int d = 4;
  /// regular_tree only.
  int depth = 0;
  /// random_regular only.
  std::size_t n = 0;
  std::uint64_t graph_seed = 1;
  /// edge_list only.
  std::string path;
  /// lazy_tree only: degree of the source (node 0) when it differs from d.
  std::optional<int> source_degree;

  /// True for topologies generated around a source labelled node 0.
  bool generated() const { return model != GraphModel::edge_list; }
};

enum class AdversaryModel { eavesdropper, spy, snapshot };

std::string_view to_string(AdversaryModel m);
AdversaryModel parse_adversary(std::string_view name);

struct AdversarySpec {
  AdversaryModel model = AdversaryModel::eavesdropper;
  /// Spy probability.
  double p = 0.0;
  /// Observation time; defaults to the realized stop time of the spread.
  std::optional<double> t;
};

Method parse_estimator(std::string_view name);

struct ExperimentSpec {
  GraphSpec graph;
  SpreadParams spread;
  AdversarySpec adversary;
  Method estimator = Method::first_timestamp;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  TrcOptions trc;
};

/// Throws std::invalid_argument for combinations that cannot run.
void validate(const ExperimentSpec& spec);

struct Interval {
  double low;
  double high;
};

/// 95% Wilson score interval.
Interval wilson_interval(std::size_t hits, std::size_t trials);

struct Diagnostics {
  /// Trials in which the estimator had nothing to work with, or reporting
  /// centrality found no center. Counted as misses.
  std::size_t no_estimate = 0;
  std::size_t source_in_candidates = 0;
  std::size_t max_candidates = 0;
  double mean_stop_time = 0.0;
  double mean_infected = 0.0;
};

struct DetectionReport {
  ExperimentSpec spec;
  std::size_t hits = 0;
  std::size_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// First-timestamp on eavesdropper observations: fraction of trials in
  /// which the source was the unique earliest reporter.
  std::optional<double> strict_win_rate;
  std::optional<TheoryValue> theory;
  Diagnostics diagnostics;
  double wall_time = 0.0;
};

/// Matching closed-form value for the experiment, when one applies.
std::optional<TheoryValue> theory_for(const ExperimentSpec& spec);

DetectionReport run_experiment(const ExperimentSpec& spec);

/// Re-runs the spreading part of one trial with the same stream and source
/// as run_experiment uses, for trace dumps.
SpreadTrace trace_for_trial(const ExperimentSpec& spec, std::size_t trial);

inline constexpr std::string_view kSweepAxes[] = {"d", "theta", "t", "K", "p", "trials"};

/// Copy of `base` with one parameter replaced.
ExperimentSpec with_axis(const ExperimentSpec& base, std::string_view axis, double value);

std::vector<DetectionReport> sweep(const ExperimentSpec& base, std::string_view axis,
                                   std::span<const double> values);

/// Builds the explicit graph of a spec (not for lazy trees).
LoadedGraph build_graph(const GraphSpec& spec);

}  // namespace rumorlab

#pragma once

#include "rumorlab/adversary.hpp"
#include "rumorlab/graph.hpp"
#include "rumorlab/rng.hpp"

#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace rumorlab {

enum class Method {
  first_timestamp,
  spy_first_timestamp,
  ball_centrality,
  timestamp_rumor_centrality,
  reporting_centrality,
  rumor_center,
};

std::string_view to_string(Method m);

struct EstimateResult {
  Method method = Method::first_timestamp;
  /// kNoNode when the estimator found no admissible node (only reporting
  /// centrality can end this way).
  NodeId chosen = kNoNode;
  /// Nodes the choice was drawn from, sorted by id.
  std::vector<NodeId> candidates;
  /// Optional per-candidate score, sorted by node id.
  std::vector<std::pair<NodeId, double>> scores;

  bool found() const { return chosen != kNoNode; }
};

/// The observation carries nothing an estimator can work with.
class NoEstimate : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Uniform pick from a nonempty sorted candidate list.
NodeId pick_uniform(std::span<const NodeId> candidates, Rng& rng);

/// Node(s) with the smallest observed first report time.
EstimateResult first_timestamp(const Observation& obs, Rng& rng);

/// Sender of the earliest spy.
EstimateResult spy_first_timestamp(const Observation& obs, Rng& rng);

/// Nodes u with h(u, w) <= τ_w − 1 for every observed reporter w.
EstimateResult ball_centrality(const Observation& obs, Graph& g, Rng& rng);

/// Reporting nodes: eavesdropper reporters up to the observation time, or
/// the spies.
std::vector<NodeId> reporting_nodes(const Observation& obs);

/// Number of reporting nodes in every branch around every node of the
/// connecting subtree, reduced to the nodes whose largest branch holds fewer
/// than half of all reporters. At most one node qualifies on a tree.
std::vector<NodeId> reporting_centers(Graph& g, std::span<const NodeId> reporters);

/// Reporting center of the observation, or a result with found() == false
/// when no node qualifies.
EstimateResult reporting_centrality(const Observation& obs, Graph& g, Rng& rng);

/// Nodes of a tree whose largest branch holds at most half of all nodes.
std::vector<NodeId> rumor_centers(std::span<const NodeId> nodes, std::span<const Edge> edges);

/// Rumor center of a snapshot observation on a tree.
EstimateResult rumor_center_estimate(const Observation& obs, Graph& g, Rng& rng);

}  // namespace rumorlab

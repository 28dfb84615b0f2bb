#pragma once

#include "rumorlab/adversary.hpp"
#include "rumorlab/graph.hpp"
#include "rumorlab/timestamp_rumor_centrality.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace rumorlab {

/// Every report time up to t, keyed by node; nodes without reports absent.
using TrickleObservation = std::map<NodeId, std::vector<int>>;

/// Calls `visit(observation, probability)` once for every trickle history
/// from `source` up to time t, i.e. every choice of relay order at every
/// node that receives the message before t. Adversary taps are distinct, so
/// histories that differ only in which tap fired are visited separately.
/// Throws std::length_error once more than `cap` histories have been seen.
void enumerate_trickle_histories(
    Graph& g, NodeId source, int theta, int t,
    const std::function<void(const TrickleObservation&, const BigRational&)>& visit,
    std::size_t cap = 10'000'000);

/// The report times an observation exposes, in enumeration form.
TrickleObservation to_trickle_observation(const Observation& obs, int t);

struct BruteForcePosterior {
  /// P(observation | source = v) for every candidate v.
  std::map<NodeId, BigRational> likelihood;
  /// Probabilities of the individual histories consistent with the
  /// observation, per candidate.
  std::map<NodeId, std::vector<BigRational>> histories;
};

/// Exact likelihood of a trickle observation under each candidate source.
/// When `candidates` is empty every node of the graph is tried (explicit
/// graphs only).
BruteForcePosterior brute_force_posterior(Graph& g, int theta, const Observation& obs, int t,
                                          std::span<const NodeId> candidates = {},
                                          std::size_t cap = 10'000'000);

}  // namespace rumorlab

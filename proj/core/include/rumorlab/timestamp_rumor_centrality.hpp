#pragma once

#include "rumorlab/adversary.hpp"
#include "rumorlab/estimators.hpp"
#include "rumorlab/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace rumorlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct TrcOptions {
  /// Trees with larger degree are refused unless `allow_large_degree`.
  int max_degree = 6;
  bool allow_large_degree = false;
};

struct TrcScore {
  NodeId node = kNoNode;
  /// Number of trickle histories up to t, started at `node`, that produce the
  /// observed report times.
  BigInt histories;
  /// Exact probability of the observation given that `node` is the source.
  BigRational likelihood;
};

/// Exact timestamp rumor centrality of every candidate source.
///
/// `obs` must be a trickle eavesdropper observation taken with keep_all at
/// time t, and `g` a tree: a lazy regular tree or an explicit tree. Candidates
/// are the nodes whose first report is at most deg(v) + 1. Results are sorted
/// by node id.
std::vector<TrcScore> timestamp_rumor_centrality_scores(const Observation& obs, Graph& g, int theta,
                                                        int t, const TrcOptions& options = {});

/// Picks uniformly among the candidates of largest likelihood.
EstimateResult timestamp_rumor_centrality(const Observation& obs, Graph& g, int theta, int t,
                                          Rng& rng, const TrcOptions& options = {});

}  // namespace rumorlab

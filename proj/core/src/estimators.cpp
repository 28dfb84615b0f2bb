#include "rumorlab/estimators.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace rumorlab {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::first_timestamp: return "first-timestamp";
    case Method::spy_first_timestamp: return "spy-first-timestamp";
    case Method::ball_centrality: return "ball";
    case Method::timestamp_rumor_centrality: return "trc";
    case Method::reporting_centrality: return "reporting-centrality";
    case Method::rumor_center: return "rumor-center";
  }
  return "?";
}

NodeId pick_uniform(std::span<const NodeId> candidates, Rng& rng) {
  if (candidates.empty()) throw std::logic_error("pick_uniform on an empty candidate set");
  if (candidates.size() == 1) return candidates.front();
  return candidates[rng.below(candidates.size())];
}

namespace {

EstimateResult finish(Method method, std::vector<NodeId> candidates, Rng& rng) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  EstimateResult out;
  out.method = method;
  if (!candidates.empty()) out.chosen = pick_uniform(candidates, rng);
  out.candidates = std::move(candidates);
  return out;
}

struct Branching {
  NodeId node;
  std::size_t largest_branch;
};

/// For every node of a tree given by (nodes, edges), the largest total
/// weight found in one of the components left after deleting that node.
std::vector<Branching> largest_branches(std::span<const NodeId> nodes, std::span<const Edge> edges,
                                        const std::unordered_map<NodeId, std::size_t>& weight,
                                        std::size_t& total) {
  std::unordered_map<NodeId, std::size_t> local;
  for (NodeId v : nodes)
    if (!local.try_emplace(v, local.size()).second)
      throw std::invalid_argument("duplicate node " + std::to_string(v));
  if (edges.size() + 1 != nodes.size()) throw GraphError("node/edge counts do not form a tree");

  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (auto [a, b] : edges) {
    auto ia = local.find(a), ib = local.find(b);
    if (ia == local.end() || ib == local.end()) throw GraphError("edge endpoint outside the node set");
    adj[ia->second].push_back(ib->second);
    adj[ib->second].push_back(ia->second);
  }

  auto w = [&](std::size_t i) {
    auto it = weight.find(nodes[i]);
    return it == weight.end() ? std::size_t{0} : it->second;
  };

  std::vector<std::size_t> parent(nodes.size(), SIZE_MAX), order;
  order.reserve(nodes.size());
  std::vector<char> seen(nodes.size(), 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t c : adj[order[head]])
      if (!seen[c]) {
        seen[c] = 1;
        parent[c] = order[head];
        order.push_back(c);
      }
  if (order.size() != nodes.size()) throw GraphError("edges do not connect the node set");

  std::vector<std::size_t> below(nodes.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    below[*it] += w(*it);
    if (parent[*it] != SIZE_MAX) below[parent[*it]] += below[*it];
  }
  total = below[0];

  std::vector<Branching> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::size_t best = parent[i] == SIZE_MAX ? 0 : total - below[i];
    for (std::size_t c : adj[i])
      if (c != parent[i]) best = std::max(best, below[c]);
    out.push_back({nodes[i], best});
  }
  return out;
}

}  // namespace

EstimateResult first_timestamp(const Observation& obs, Rng& rng) {
  const auto& view = obs.eavesdropper();
  if (view.first.empty()) throw NoEstimate("no reports yet");
  double best = kForever;
  for (const auto& [v, tau] : view.first) best = std::min(best, tau);
  std::vector<NodeId> candidates;
  for (const auto& [v, tau] : view.first)
    if (tau == best) candidates.push_back(v);
  return finish(Method::first_timestamp, std::move(candidates), rng);
}

EstimateResult spy_first_timestamp(const Observation& obs, Rng& rng) {
  const auto& view = obs.spy();
  if (view.spies.empty()) throw NoEstimate("no spy has received the message");
  double best = kForever;
  for (const auto& s : view.spies) best = std::min(best, s.time);
  std::vector<NodeId> candidates;
  for (const auto& s : view.spies)
    if (s.time == best) candidates.push_back(s.sender);
  return finish(Method::spy_first_timestamp, std::move(candidates), rng);
}

EstimateResult ball_centrality(const Observation& obs, Graph& g, Rng& rng) {
  const auto& view = obs.eavesdropper();
  if (view.first.empty()) throw NoEstimate("no reports yet");

  auto radius = [](double tau) {
    if (tau < 1.0 || tau != static_cast<double>(static_cast<long long>(tau)))
      throw std::invalid_argument("ball centrality needs integer trickle timestamps >= 1");
    return static_cast<std::size_t>(tau) - 1;
  };

  auto tightest = std::min_element(view.first.begin(), view.first.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<NodeId> candidates = ball(g, tightest->first, radius(tightest->second));
  for (const auto& [w, tau] : view.first) {
    if (w == tightest->first) continue;
    std::size_t r = radius(tau);
    std::erase_if(candidates, [&](NodeId u) { return hop_distance(g, u, w) > r; });
  }
  if (candidates.empty())
    throw std::invalid_argument("reporter balls do not intersect; timestamps are inconsistent");
  return finish(Method::ball_centrality, std::move(candidates), rng);
}

std::vector<NodeId> reporting_nodes(const Observation& obs) {
  std::vector<NodeId> out;
  if (const auto* e = std::get_if<EavesdropperView>(&obs.view)) {
    for (const auto& [v, tau] : e->first)
      if (tau <= obs.observed_until) out.push_back(v);
  } else if (const auto* s = std::get_if<SpyView>(&obs.view)) {
    for (const auto& spy : s->spies) out.push_back(spy.node);
  } else {
    throw std::invalid_argument("reporting centrality needs an eavesdropper or spy observation");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> reporting_centers(Graph& g, std::span<const NodeId> reporters) {
  if (reporters.empty()) throw NoEstimate("no reporting nodes");
  auto sub = connecting_subtree(g, reporters);
  std::unordered_map<NodeId, std::size_t> weight;
  for (NodeId r : reporters) weight[r] = 1;
  std::size_t total = 0;
  std::vector<NodeId> centers;
  for (const auto& b : largest_branches(sub.nodes, sub.edges, weight, total))
    if (2 * b.largest_branch < total) centers.push_back(b.node);
  if (centers.size() > 1)
    throw std::logic_error("found " + std::to_string(centers.size()) +
                           " reporting centers; the graph is not a tree");
  return centers;
}

EstimateResult reporting_centrality(const Observation& obs, Graph& g, Rng& rng) {
  auto reporters = reporting_nodes(obs);
  return finish(Method::reporting_centrality, reporting_centers(g, reporters), rng);
}

std::vector<NodeId> rumor_centers(std::span<const NodeId> nodes, std::span<const Edge> edges) {
  if (nodes.empty()) throw std::invalid_argument("rumor centers of an empty tree");
  std::unordered_map<NodeId, std::size_t> weight;
  for (NodeId v : nodes) weight[v] = 1;
  std::size_t total = 0;
  std::vector<NodeId> centers;
  for (const auto& b : largest_branches(nodes, edges, weight, total))
    if (2 * b.largest_branch <= total) centers.push_back(b.node);
  std::sort(centers.begin(), centers.end());
  return centers;
}

EstimateResult rumor_center_estimate(const Observation& obs, Graph& g, Rng& rng) {
  const auto& view = obs.snapshot();
  if (view.infected.empty()) throw NoEstimate("empty snapshot");
  auto sub = connecting_subtree(g, view.infected);
  if (sub.nodes.size() != view.infected.size())
    throw std::invalid_argument("snapshot is not a connected subtree");
  return finish(Method::rumor_center, rumor_centers(sub.nodes, sub.edges), rng);
}

}  // namespace rumorlab

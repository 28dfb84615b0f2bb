#include "rumorlab/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rumorlab {

namespace {

class Enumerator {
public:
  Enumerator(Graph& g, int theta, int t, std::size_t cap,
             const std::function<void(const TrickleObservation&, const BigRational&)>& visit)
      : g_(g), theta_(theta), t_(t), cap_(cap), visit_(visit) {}

  void run(NodeId source) {
    pending_.push_back({source, kNoNode, 0});
    expand(0, BigRational(1));
  }

private:
  struct Pending {
    NodeId node;
    NodeId parent;
    int time;
  };

  void expand(std::size_t i, const BigRational& prob) {
    if (i == pending_.size()) {
      if (++seen_ > cap_)
        throw std::length_error("more than " + std::to_string(cap_) + " trickle histories");
      visit_(observation_, prob);
      return;
    }
    const auto [u, parent, x] = pending_[i];
    std::vector<NodeId> children;
    for (NodeId c : g_.neighbors(u))
      if (c != parent) children.push_back(c);
    const int n = static_cast<int>(children.size());
    const int s = n + theta_;
    const int k = std::max(0, std::min(t_ - x, s));
    BigInt orders = 1;
    for (int j = 0; j < k; ++j) orders *= s - j;
    BigRational step_prob = prob / orders;

    // Slot items: 0..n-1 are children, n..s-1 are taps.
    std::vector<char> used(s, 0);
    std::vector<int> chosen;
    chosen.reserve(k);
    std::function<void()> fill = [&]() {
      if (static_cast<int>(chosen.size()) == k) {
        std::size_t mark = pending_.size();
        std::vector<int> taps;
        for (int pos = 0; pos < k; ++pos) {
          int item = chosen[pos];
          if (item < n)
            pending_.push_back({children[item], u, x + pos + 1});
          else
            taps.push_back(x + pos + 1);
        }
        if (!taps.empty()) observation_[u] = taps;
        expand(i + 1, step_prob);
        if (!taps.empty()) observation_.erase(u);
        pending_.resize(mark);
        return;
      }
      for (int item = 0; item < s; ++item) {
        if (used[item]) continue;
        used[item] = 1;
        chosen.push_back(item);
        fill();
        chosen.pop_back();
        used[item] = 0;
      }
    };
    fill();
  }

  Graph& g_;
  int theta_;
  int t_;
  std::size_t cap_;
  const std::function<void(const TrickleObservation&, const BigRational&)>& visit_;
  std::vector<Pending> pending_;
  TrickleObservation observation_;
  std::size_t seen_ = 0;
};

void require_tree(const Graph& g) {
  if (!g.is_lazy() && g.edge_count() + component_count(g) != g.node_count())
    throw std::invalid_argument("brute-force enumeration needs a tree");
}

}  // namespace

void enumerate_trickle_histories(
    Graph& g, NodeId source, int theta, int t,
    const std::function<void(const TrickleObservation&, const BigRational&)>& visit,
    std::size_t cap) {
  if (theta < 1) throw std::invalid_argument("theta must be >= 1");
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  if (!g.contains(source)) throw GraphError("unknown source " + std::to_string(source));
  require_tree(g);
  Enumerator(g, theta, t, cap, visit).run(source);
}

TrickleObservation to_trickle_observation(const Observation& obs, int t) {
  const auto& view = obs.eavesdropper();
  if (!view.keep_all) throw std::invalid_argument("observation must keep every report time");
  TrickleObservation out;
  for (const auto& [v, times] : view.all) {
    std::vector<int> kept;
    for (double r : times) {
      if (r != std::floor(r)) throw std::invalid_argument("trickle report times must be integers");
      if (r <= t) kept.push_back(static_cast<int>(r));
    }
    std::sort(kept.begin(), kept.end());
    if (!kept.empty()) out.emplace(v, std::move(kept));
  }
  return out;
}

BruteForcePosterior brute_force_posterior(Graph& g, int theta, const Observation& obs, int t,
                                          std::span<const NodeId> candidates, std::size_t cap) {
  if (obs.protocol != Protocol::trickle)
    throw std::invalid_argument("brute-force posterior is defined for trickle only");
  auto target = to_trickle_observation(obs, t);
  std::vector<NodeId> sources(candidates.begin(), candidates.end());
  if (sources.empty()) {
    if (g.is_lazy()) throw std::invalid_argument("candidates are required on a lazy tree");
    for (NodeId v = 0; v < g.node_count(); ++v) sources.push_back(v);
  }

  BruteForcePosterior out;
  for (NodeId v : sources) {
    BigRational total = 0;
    auto& matching = out.histories[v];
    enumerate_trickle_histories(
        g, v, theta, t,
        [&](const TrickleObservation& seen, const BigRational& p) {
          if (seen == target) {
            total += p;
            matching.push_back(p);
          }
        },
        cap);
    out.likelihood[v] = total;
  }
  return out;
}

}  // namespace rumorlab

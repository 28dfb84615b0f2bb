#include "rumorlab/timestamp_rumor_centrality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace rumorlab {

namespace {

// The solver roots the tree at a candidate v and, for each node u and each
// receipt time x, sums over every way u's first k = min(t − x, s) relay
// slots can be filled: observed report times go to taps, every other slot
// time in the window must go to a distinct child. Children on the paths to
// reporters must receive the message by t; all other children may or may
// not. Counts and probabilities are carried together.

struct Weight {
  BigInt count;
  BigRational prob;

  bool is_zero() const { return count == 0; }
};

Weight operator*(const Weight& a, const Weight& b) { return {a.count * b.count, a.prob * b.prob}; }

Weight& operator+=(Weight& a, const Weight& b) {
  a.count += b.count;
  a.prob += b.prob;
  return a;
}

const Weight kZero{0, 0};
const Weight kOne{1, 1};

BigInt falling(int n, int k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= n - i;
  return out;
}

using Reports = std::map<NodeId, std::vector<int>>;

class Solver {
public:
  Solver(Graph& g, const Reports& reports, int theta, int t, NodeId root)
      : g_(g), reports_(reports), theta_(theta), t_(t), root_(root) {
    std::vector<NodeId> terminals{root};
    for (const auto& [v, times] : reports) terminals.push_back(v);
    for (NodeId v : connecting_subtree(g, terminals).nodes) marked_.insert(v);
  }

  Weight solve() { return node_weight(root_, kNoNode, 0); }

private:
  Weight node_weight(NodeId u, NodeId parent, int x) {
    auto key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight w = compute(u, parent, x);
    memo_.emplace(key, w);
    return w;
  }

  Weight compute(NodeId u, NodeId parent, int x) {
    static const std::vector<int> none;
    auto rit = reports_.find(u);
    const auto& reported = rit == reports_.end() ? none : rit->second;
    if (!reported.empty() && reported.front() <= x) return kZero;

    auto nbrs = g_.neighbors(u);
    std::vector<NodeId> marked_children, free_children;
    for (NodeId c : nbrs) {
      if (c == parent) continue;
      (marked_.contains(c) ? marked_children : free_children).push_back(c);
    }
    const int n = static_cast<int>(marked_children.size() + free_children.size());
    const int s = n + theta_;
    const int k = std::max(0, std::min(t_ - x, s));
    const int a = static_cast<int>(reported.size());
    if (a > theta_) return kZero;
    if (!reported.empty() && reported.back() > x + k) return kZero;

    std::vector<int> open;
    for (int time = x + 1; time <= x + k; ++time)
      if (!std::binary_search(reported.begin(), reported.end(), time)) open.push_back(time);
    const int h = static_cast<int>(open.size());
    if (h > n) return kZero;

    const std::size_t full = (std::size_t{1} << h) - 1;
    std::vector<Weight> dp(full + 1, kZero);
    dp[0] = kOne;
    auto place = [&](NodeId c, bool may_skip) {
      std::vector<Weight> next = may_skip ? dp : std::vector<Weight>(full + 1, kZero);
      for (std::size_t mask = 0; mask <= full; ++mask) {
        if (dp[mask].is_zero()) continue;
        for (int j = 0; j < h; ++j) {
          if (mask & (std::size_t{1} << j)) continue;
          Weight sub = node_weight(c, u, open[j]);
          if (!sub.is_zero()) next[mask | (std::size_t{1} << j)] += dp[mask] * sub;
        }
      }
      dp = std::move(next);
    };
    for (NodeId c : marked_children) place(c, false);

    Weight total = kZero;
    if (g_.is_lazy()) {
      // Unmarked children of a lazy regular tree are interchangeable: the
      // open slots left over go to any of them.
      const int pool = static_cast<int>(free_children.size());
      for (std::size_t mask = 0; mask <= full; ++mask) {
        if (dp[mask].is_zero()) continue;
        int left = h - std::popcount(mask);
        BigInt ways = falling(pool, left);
        if (ways == 0) continue;
        Weight term = dp[mask] * Weight{ways, BigRational(ways)};
        for (int j = 0; j < h && !term.is_zero(); ++j)
          if (!(mask & (std::size_t{1} << j))) term = term * free_subtree(open[j]);
        total += term;
      }
    } else {
      for (NodeId c : free_children) place(c, true);
      total = dp[full];
    }
    if (total.is_zero()) return kZero;

    BigInt taps = falling(theta_, a);
    total.count *= taps;
    total.prob *= BigRational(taps, falling(s, k));
    return total;
  }

  // Subtree of a lazy regular tree without reporters, rooted at a node that
  // received the message at time x.
  Weight free_subtree(int x) {
    if (x >= t_) return kOne;
    if (auto it = free_memo_.find(x); it != free_memo_.end()) return it->second;
    const int n = g_.degree_hint() - 1;
    const int s = n + theta_;
    const int k = std::min(t_ - x, s);
    Weight w = kZero;
    if (k <= n) {
      BigInt ways = falling(n, k);
      w = {ways, BigRational(ways, falling(s, k))};
      for (int i = 1; i <= k; ++i) w = w * free_subtree(x + i);
    }
    free_memo_.emplace(x, w);
    return w;
  }

  Graph& g_;
  const Reports& reports_;
  int theta_;
  int t_;
  NodeId root_;
  std::unordered_set<NodeId> marked_;
  std::unordered_map<std::uint64_t, Weight> memo_;
  std::unordered_map<int, Weight> free_memo_;
};

void check_tree(const Graph& g, int t, const TrcOptions& options) {
  int d = 0;
  if (g.is_lazy()) {
    if (g.root_degree() != g.degree_hint())
      throw std::invalid_argument("timestamp rumor centrality needs a regular tree");
    d = g.degree_hint();
  } else {
    if (g.edge_count() + component_count(g) != g.node_count())
      throw std::invalid_argument("timestamp rumor centrality needs a tree");
    d = static_cast<int>(g.max_degree());
  }
  if (d > options.max_degree && !options.allow_large_degree)
    throw std::invalid_argument("timestamp rumor centrality refuses degree " + std::to_string(d) +
                                " > " + std::to_string(options.max_degree) +
                                " (cost grows like (2d)^d)");
  if (t < d + 1)
    throw std::invalid_argument("timestamp rumor centrality needs t >= d + 1 = " +
                                std::to_string(d + 1));
}

}  // namespace

std::vector<TrcScore> timestamp_rumor_centrality_scores(const Observation& obs, Graph& g, int theta,
                                                        int t, const TrcOptions& options) {
  const auto& view = obs.eavesdropper();
  if (obs.protocol != Protocol::trickle)
    throw std::invalid_argument("timestamp rumor centrality needs a trickle observation");
  if (!view.keep_all)
    throw std::invalid_argument("timestamp rumor centrality needs every report time (keep_all)");
  if (obs.observed_until < t)
    throw std::invalid_argument("observation ends before t");
  if (theta < 1) throw std::invalid_argument("theta must be >= 1");
  check_tree(g, t, options);

  Reports reports;
  for (const auto& [v, times] : view.all) {
    auto& out = reports[v];
    for (double r : times) {
      if (r != std::floor(r)) throw std::invalid_argument("trickle report times must be integers");
      if (r <= t) out.push_back(static_cast<int>(r));
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) reports.erase(v);
  }

  std::vector<TrcScore> out;
  for (const auto& [v, times] : reports) {
    if (times.front() > static_cast<int>(g.degree(v)) + 1) continue;
    Solver solver(g, reports, theta, t, v);
    Weight w = solver.solve();
    out.push_back({v, std::move(w.count), std::move(w.prob)});
  }
  return out;
}

EstimateResult timestamp_rumor_centrality(const Observation& obs, Graph& g, int theta, int t,
                                          Rng& rng, const TrcOptions& options) {
  if (obs.eavesdropper().first.empty()) throw NoEstimate("no reports yet");
  auto scores = timestamp_rumor_centrality_scores(obs, g, theta, t, options);
  BigRational best = 0;
  for (const auto& s : scores) best = std::max(best, s.likelihood);
  if (best == 0) throw std::invalid_argument("no candidate source can produce this observation");

  EstimateResult out;
  out.method = Method::timestamp_rumor_centrality;
  for (const auto& s : scores) {
    out.scores.emplace_back(s.node, static_cast<double>(s.likelihood));
    if (s.likelihood == best) out.candidates.push_back(s.node);
  }
  out.chosen = pick_uniform(out.candidates, rng);
  return out;
}

}  // namespace rumorlab

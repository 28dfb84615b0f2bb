#include "rumorlab/graph.hpp"

#include "rumorlab/rng.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace rumorlab {

// ---------------------------------------------------------------- Graph

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a node outside [0, " + std::to_string(node_count) + ")");
    if (u == v) throw GraphError("self-loop on node " + std::to_string(u));
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  auto csr = std::make_shared<Csr>();
  csr->offsets.assign(node_count + 1, 0);
  for (auto [u, v] : canon) {
    ++csr->offsets[u + 1];
    ++csr->offsets[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) csr->offsets[i + 1] += csr->offsets[i];
  csr->targets.resize(csr->offsets.back());
  std::vector<std::size_t> fill(csr->offsets.begin(), csr->offsets.end() - 1);
  for (auto [u, v] : canon) {
    csr->targets[fill[u]++] = v;
    csr->targets[fill[v]++] = u;
  }

  Graph g;
  g.kind_ = GraphKind::explicit_graph;
  g.csr_ = std::move(csr);
  return g;
}

Graph Graph::lazy_tree(int degree, int root_degree) {
  if (degree < 2) throw std::invalid_argument("lazy tree degree must be >= 2");
  if (root_degree < 1) throw std::invalid_argument("lazy tree root degree must be >= 1");
  Graph g;
  g.kind_ = GraphKind::lazy_regular_tree;
  g.degree_ = degree;
  g.root_degree_ = root_degree;
  g.lazy_adj_.emplace_back();
  g.parent_.push_back(kNoNode);
  g.depth_.push_back(0);
  g.expanded_.push_back(false);
  return g;
}

std::size_t Graph::node_count() const {
  if (is_lazy()) return lazy_adj_.size();
  return csr_ ? csr_->offsets.size() - 1 : 0;
}

std::size_t Graph::edge_count() const {
  if (is_lazy()) return lazy_adj_.size() - 1;
  return csr_ ? csr_->targets.size() / 2 : 0;
}

void Graph::check_node(NodeId v) const {
  if (!contains(v)) throw GraphError("unknown node " + std::to_string(v));
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  if (is_lazy()) return static_cast<std::size_t>(v == 0 ? root_degree_ : degree_);
  return csr_->offsets[v + 1] - csr_->offsets[v];
}

std::size_t Graph::max_degree() const {
  if (is_lazy()) return static_cast<std::size_t>(std::max(degree_, root_degree_));
  std::size_t best = 0;
  for (NodeId v = 0; v < node_count(); ++v) best = std::max(best, degree(v));
  return best;
}

void Graph::expand(NodeId v) {
  const std::size_t want = degree(v);
  while (lazy_adj_[v].size() < want) {
    auto child = static_cast<NodeId>(lazy_adj_.size());
    lazy_adj_.push_back({v});
    parent_.push_back(v);
    depth_.push_back(depth_[v] + 1);
    expanded_.push_back(false);
    lazy_adj_[v].push_back(child);
  }
  expanded_[v] = true;
}

std::span<const NodeId> Graph::neighbors(NodeId v) {
  check_node(v);
  if (!is_lazy()) return known_neighbors(v);
  if (!expanded_[v]) expand(v);
  return lazy_adj_[v];
}

std::span<const NodeId> Graph::known_neighbors(NodeId v) const {
  check_node(v);
  if (is_lazy()) return lazy_adj_[v];
  return {csr_->targets.data() + csr_->offsets[v], csr_->targets.data() + csr_->offsets[v + 1]};
}

NodeId Graph::parent(NodeId v) const {
  if (!is_lazy()) throw GraphError("parent() is only defined on lazy trees");
  check_node(v);
  return parent_[v];
}

std::size_t Graph::depth(NodeId v) const {
  if (!is_lazy()) throw GraphError("depth() is only defined on lazy trees");
  check_node(v);
  return depth_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : known_neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------- builders

Graph build_regular_tree(int d, int depth) {
  if (d < 2) throw std::invalid_argument("regular tree degree must be >= 2");
  if (depth < 0) throw std::invalid_argument("regular tree depth must be >= 0");
  std::vector<Edge> edges;
  std::vector<NodeId> frontier{0};
  NodeId next = 1;
  for (int level = 0; level < depth; ++level) {
    std::vector<NodeId> grown;
    for (NodeId v : frontier) {
      int children = level == 0 ? d : d - 1;
      for (int c = 0; c < children; ++c) {
        edges.emplace_back(v, next);
        grown.push_back(next++);
      }
    }
    frontier = std::move(grown);
  }
  return Graph::from_edges(next, edges);
}

Graph lazy_regular_tree(int d) { return Graph::lazy_tree(d, d); }

Graph lazy_regular_tree(int d, int source_degree) { return Graph::lazy_tree(d, source_degree); }

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool any_valid_pair(const std::vector<NodeId>& points, const std::unordered_set<std::uint64_t>& used) {
  std::vector<NodeId> nodes(points);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (!used.contains(edge_key(nodes[i], nodes[j]))) return true;
  return false;
}

}  // namespace

Graph build_random_regular(std::size_t n, int d, std::uint64_t seed, int max_rounds) {
  if (d < 1) throw std::invalid_argument("random regular degree must be >= 1");
  if (static_cast<std::size_t>(d) >= n)
    throw std::invalid_argument("random regular graph needs d < n");
  if ((n * static_cast<std::size_t>(d)) % 2 != 0)
    throw std::invalid_argument("random regular graph needs n*d even");

  Rng rng(seed);
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<NodeId> points;
    points.reserve(n * d);
    for (NodeId v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) points.push_back(v);

    std::unordered_set<std::uint64_t> used;
    std::vector<Edge> edges;
    bool stuck = false;
    std::size_t failures = 0;
    while (!points.empty()) {
      std::size_t i = rng.below(points.size());
      std::size_t j = rng.below(points.size());
      NodeId u = points[i], v = points[j];
      if (i == j || u == v || used.contains(edge_key(u, v))) {
        if (++failures > 50 * points.size() + 100) {
          if (!any_valid_pair(points, used)) {
            stuck = true;
            break;
          }
          failures = 0;
        }
        continue;
      }
      failures = 0;
      used.insert(edge_key(u, v));
      edges.emplace_back(u, v);
      // Remove the higher index first so the lower one stays valid.
      for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
        points[idx] = points.back();
        points.pop_back();
      }
    }
    if (!stuck) return Graph::from_edges(n, edges);
  }
  throw GraphError("random regular pairing got stuck in all " + std::to_string(max_rounds) +
                   " rounds for n=" + std::to_string(n) + ", d=" + std::to_string(d));
}

LoadedGraph parse_edge_list(std::istream& in, const std::string& source_name) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  LoadedGraph out;
  std::vector<Edge> edges;
  auto intern = [&](std::uint64_t raw) {
    auto [it, fresh] = dense.try_emplace(raw, static_cast<NodeId>(out.original_ids.size()));
    if (fresh) out.original_ids.push_back(raw);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    auto where = source_name + ":" + std::to_string(line_no);
    if (b.empty()) throw GraphError(where + ": expected two node ids");
    if (fields >> extra) throw GraphError(where + ": unexpected token '" + extra + "'");
    auto parse_id = [&](const std::string& tok) -> std::uint64_t {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw GraphError(where + ": '" + tok + "' is not a non-negative integer");
      try {
        return std::stoull(tok);
      } catch (const std::out_of_range&) {
        throw GraphError(where + ": node id '" + tok + "' is out of range");
      }
    };
    std::uint64_t u = parse_id(a), v = parse_id(b);
    if (u == v) throw GraphError(where + ": self-loop on node " + a);
    NodeId du = intern(u);
    edges.emplace_back(du, intern(v));
  }
  if (edges.empty()) throw GraphError(source_name + ": edge list is empty");
  out.graph = Graph::from_edges(out.original_ids.size(), edges);
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open edge list " + path.string());
  return parse_edge_list(in, path.string());
}

// ---------------------------------------------------------------- queries

namespace {

std::size_t lazy_distance(const Graph& g, NodeId u, NodeId v) {
  std::size_t du = g.depth(u), dv = g.depth(v), hops = 0;
  while (du > dv) { u = g.parent(u); --du; ++hops; }
  while (dv > du) { v = g.parent(v); --dv; ++hops; }
  while (u != v) {
    u = g.parent(u);
    v = g.parent(v);
    hops += 2;
  }
  return hops;
}

/// BFS parents from `root` over an explicit graph; kNoNode marks unreached.
std::vector<NodeId> bfs_parents(const Graph& g, NodeId root) {
  std::vector<NodeId> parent(g.node_count(), kNoNode);
  parent[root] = root;
  std::deque<NodeId> queue{root};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId w : g.known_neighbors(u)) {
      if (parent[w] == kNoNode) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  return parent;
}

}  // namespace

std::size_t hop_distance(Graph& g, NodeId u, NodeId v) {
  if (!g.contains(u)) throw GraphError("unknown node " + std::to_string(u));
  if (!g.contains(v)) throw GraphError("unknown node " + std::to_string(v));
  if (u == v) return 0;
  if (g.is_lazy()) return lazy_distance(g, u, v);

  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  dist[u] = 0;
  std::deque<NodeId> queue{u};
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    for (NodeId w : g.known_neighbors(x)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[x] + 1;
      if (w == v) return dist[w];
      queue.push_back(w);
    }
  }
  return kUnreachable;
}

std::vector<NodeId> ball(Graph& g, NodeId center, std::size_t radius) {
  if (!g.contains(center)) throw GraphError("unknown node " + std::to_string(center));
  std::vector<NodeId> out{center};
  std::unordered_map<NodeId, std::size_t> dist{{center, 0}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    NodeId x = out[head];
    std::size_t dx = dist[x];
    if (dx == radius) continue;
    auto nbrs = g.neighbors(x);
    std::vector<NodeId> copy(nbrs.begin(), nbrs.end());
    for (NodeId w : copy) {
      if (dist.try_emplace(w, dx + 1).second) out.push_back(w);
    }
  }
  return out;
}

std::vector<NodeId> tree_path(Graph& g, NodeId u, NodeId v) {
  if (!g.contains(u)) throw GraphError("unknown node " + std::to_string(u));
  if (!g.contains(v)) throw GraphError("unknown node " + std::to_string(v));
  if (g.is_lazy()) {
    std::vector<NodeId> up, down;
    while (g.depth(u) > g.depth(v)) { up.push_back(u); u = g.parent(u); }
    while (g.depth(v) > g.depth(u)) { down.push_back(v); v = g.parent(v); }
    while (u != v) {
      up.push_back(u);
      down.push_back(v);
      u = g.parent(u);
      v = g.parent(v);
    }
    up.push_back(u);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }
  auto parent = bfs_parents(g, v);
  if (parent[u] == kNoNode) throw GraphError("nodes are disconnected");
  std::vector<NodeId> path{u};
  while (u != v) {
    u = parent[u];
    path.push_back(u);
  }
  return path;
}

Subtree connecting_subtree(Graph& g, std::span<const NodeId> terminals) {
  Subtree out;
  if (terminals.empty()) return out;
  for (NodeId t : terminals)
    if (!g.contains(t)) throw GraphError("unknown node " + std::to_string(t));

  // Parent pointers toward an anchor: node 0 on a lazy tree, the first
  // terminal on an explicit graph.
  std::vector<NodeId> bfs;
  NodeId anchor = g.is_lazy() ? 0 : terminals.front();
  if (!g.is_lazy()) bfs = bfs_parents(g, anchor);
  auto up = [&](NodeId v) -> NodeId {
    if (g.is_lazy()) return g.parent(v);
    return v == anchor ? kNoNode : bfs[v];
  };
  if (!g.is_lazy())
    for (NodeId t : terminals)
      if (bfs[t] == kNoNode) throw GraphError("terminals are disconnected");

  std::unordered_set<NodeId> marked;
  std::unordered_set<NodeId> is_terminal(terminals.begin(), terminals.end());
  for (NodeId t : terminals) {
    for (NodeId v = t; v != kNoNode && marked.insert(v).second; v = up(v)) {}
  }
  std::unordered_map<NodeId, std::size_t> marked_children;
  std::unordered_map<NodeId, NodeId> only_child;
  for (NodeId v : marked) {
    NodeId p = up(v);
    if (p != kNoNode) {
      ++marked_children[p];
      only_child[p] = v;
    }
  }
  // Trim the anchor-side stem that carries no terminal.
  NodeId top = anchor;
  while (!is_terminal.contains(top) && marked_children[top] == 1) {
    marked.erase(top);
    top = only_child[top];
  }

  out.nodes.assign(marked.begin(), marked.end());
  std::sort(out.nodes.begin(), out.nodes.end());
  for (NodeId v : out.nodes) {
    if (v == top) continue;
    out.edges.emplace_back(up(v), v);
  }
  return out;
}

std::unordered_map<NodeId, NodeId> subtree_partition(const Graph& g, NodeId root,
                                                     std::span<const NodeId> nodes) {
  std::unordered_set<NodeId> members(nodes.begin(), nodes.end());
  if (!members.contains(root)) throw GraphError("root is not among the supplied nodes");
  std::unordered_map<NodeId, NodeId> label;
  std::unordered_map<NodeId, NodeId> parent{{root, kNoNode}};
  std::deque<NodeId> queue{root};
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    for (NodeId w : g.known_neighbors(x)) {
      if (!members.contains(w) || w == parent[x]) continue;
      if (parent.contains(w)) throw GraphError("supplied nodes contain a cycle; not a tree");
      parent[w] = x;
      label[w] = x == root ? w : label[x];
      queue.push_back(w);
    }
  }
  if (parent.size() != members.size())
    throw GraphError("supplied nodes are not connected to the root");
  return label;
}

std::size_t triangle_count(const Graph& g) {
  if (g.is_lazy()) return 0;
  std::size_t count = 0;
  std::vector<char> mark(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nu = g.known_neighbors(u);
    for (NodeId w : nu) mark[w] = 1;
    for (NodeId v : nu) {
      if (v <= u) continue;
      for (NodeId w : g.known_neighbors(v))
        if (w > v && mark[w]) ++count;
    }
    for (NodeId w : nu) mark[w] = 0;
  }
  return count;
}

std::size_t component_count(const Graph& g) {
  std::vector<char> seen(g.node_count(), 0);
  std::size_t components = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++components;
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId w : g.known_neighbors(x))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return components;
}

}  // namespace rumorlab

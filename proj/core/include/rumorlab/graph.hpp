#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rumorlab {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class GraphKind { explicit_graph, lazy_regular_tree };

/// Undirected server graph.
///
/// An explicit graph is an immutable CSR adjacency shared between copies, so
/// copying one is cheap and copies may be read from several threads.
///
/// A lazy regular tree is an infinite d-regular tree rooted at node 0. A
/// node's neighbours are created the first time `neighbors()` is called on
/// it; materialization only ever appends. Each copy owns its own nodes.
class Graph {
public:
  Graph() = default;

  /// Simple undirected graph on `node_count` nodes. Duplicate edges (in either
  /// orientation) are collapsed; self-loops and out-of-range ids throw.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  /// Infinite tree where every node has `degree` neighbours, except the root
  /// (node 0) which has `root_degree`.
  static Graph lazy_tree(int degree, int root_degree);

  GraphKind kind() const { return kind_; }
  bool is_lazy() const { return kind_ == GraphKind::lazy_regular_tree; }

  /// Tree degree d of a lazy tree; 0 for explicit graphs.
  int degree_hint() const { return degree_; }
  int root_degree() const { return root_degree_; }

  /// Number of nodes (materialized nodes for a lazy tree).
  std::size_t node_count() const;
  std::size_t edge_count() const;
  bool contains(NodeId v) const { return v < node_count(); }

  /// Full degree of `v`, whether or not its neighbours are materialized.
  std::size_t degree(NodeId v) const;
  std::size_t max_degree() const;

  /// Neighbours of `v`, materializing them on a lazy tree. The span stays
  /// valid while the graph is alive.
  std::span<const NodeId> neighbors(NodeId v);

  /// Neighbours that already exist. For a lazy tree this is just the parent
  /// until `neighbors(v)` has been called.
  std::span<const NodeId> known_neighbors(NodeId v) const;

  /// Lazy trees only: parent toward node 0 (kNoNode for the root) and depth.
  NodeId parent(NodeId v) const;
  std::size_t depth(NodeId v) const;

  std::vector<Edge> edges() const;

private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;
  };

  void check_node(NodeId v) const;
  void expand(NodeId v);

  GraphKind kind_ = GraphKind::explicit_graph;
  std::shared_ptr<const Csr> csr_;

  int degree_ = 0;
  int root_degree_ = 0;
  std::vector<std::vector<NodeId>> lazy_adj_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<bool> expanded_;
};

/// Balanced tree rooted at node 0: internal nodes have exactly `d`
/// neighbours, leaves sit at hop distance `depth`.
Graph build_regular_tree(int d, int depth);

/// Lazily materialized infinite d-regular tree. `source_degree` overrides the
/// degree of node 0 (defaults to d).
Graph lazy_regular_tree(int d);
Graph lazy_regular_tree(int d, int source_degree);

/// Simple d-regular graph on n nodes from the pairing model.
///
/// Points are paired uniformly at random, rejecting any pair that would form
/// a loop or a repeated edge; if the remaining points admit no valid pair the
/// round restarts. Throws GraphError after `max_rounds` failed rounds.
Graph build_random_regular(std::size_t n, int d, std::uint64_t seed, int max_rounds = 100);

struct LoadedGraph {
  Graph graph;
  /// original_ids[i] is the id used in the file for dense node i.
  std::vector<std::uint64_t> original_ids;
};

/// Whitespace-separated edge list; '#' starts a comment line.
LoadedGraph load_edge_list(const std::filesystem::path& path);
LoadedGraph parse_edge_list(std::istream& in, const std::string& source_name = "<stream>");

/// Hop count between u and v, or kUnreachable if they are disconnected.
std::size_t hop_distance(Graph& g, NodeId u, NodeId v);

/// All nodes within `radius` hops of `center` (center first).
std::vector<NodeId> ball(Graph& g, NodeId center, std::size_t radius);

/// Node sequence of the path from u to v in a tree.
std::vector<NodeId> tree_path(Graph& g, NodeId u, NodeId v);

struct Subtree {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
};

/// Minimal subtree of a tree containing every terminal.
Subtree connecting_subtree(Graph& g, std::span<const NodeId> terminals);

/// For the tree induced on `nodes`, maps every node other than `root` to the
/// neighbour of `root` whose branch contains it. Throws GraphError when the
/// induced graph has a cycle or does not reach every node.
std::unordered_map<NodeId, NodeId> subtree_partition(const Graph& g, NodeId root,
                                                     std::span<const NodeId> nodes);

std::size_t triangle_count(const Graph& g);
std::size_t component_count(const Graph& g);

}  // namespace rumorlab

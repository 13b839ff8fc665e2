#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace btlab {

/// Finite simple graph with optional vertex payloads, a coloring tau into
/// Z/dZ (or any index set 0..k-1) and a distance-to-origin annotation.
class LabeledGraph {
 public:
  explicit LabeledGraph(std::size_t n = 0) : adj_(n) {}

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  int add_vertex();
  /// Throws InvalidInput on loops, out-of-range ids and repeated edges.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  /// Pairs (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  std::vector<std::string> payload;        // empty or one entry per vertex
  std::optional<std::vector<int>> tau;
  std::optional<std::vector<int>> dist;
  nlohmann::json meta = nlohmann::json::object();

 private:
  std::vector<std::vector<int>> adj_;  // sorted
  std::size_t edges_ = 0;
};

/// BFS distances from src; -1 for unreachable vertices.
std::vector<int> bfs_distances(const LabeledGraph& g, int src);
bool is_connected(const LabeledGraph& g);
bool is_proper_coloring(const LabeledGraph& g, std::span<const int> colors);

/// Subgraph induced on `vertices` (renumbered in the given order); labels
/// and payloads are carried over.
LabeledGraph induced_subgraph(const LabeledGraph& g, std::span<const int> vertices);
/// Same graph with vertex v renamed to perm[v].
LabeledGraph relabel(const LabeledGraph& g, std::span<const int> perm);

LabeledGraph cycle_graph(int n);
LabeledGraph path_graph(int n);

// Graph document I/O: {"meta": {...}, "vertices": [{"id", "module", "tau", "dist"}], "edges": [[u, v], ...]}.
nlohmann::json to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& doc);
LabeledGraph parse_graph(std::string_view text);
/// DOT with one color class per tau value.
std::string to_dot(const LabeledGraph& g);
/// "u,v" lines preceded by a header.
std::string to_csv(const LabeledGraph& g);

}  // namespace btlab

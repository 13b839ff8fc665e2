#include "btlab/graph.hpp"

#include <algorithm>
#include <deque>

#include "btlab/error.hpp"

namespace btlab {

int LabeledGraph::add_vertex() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void LabeledGraph::add_edge(int u, int v) {
  const int n = static_cast<int>(adj_.size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
  if (u == v) throw InvalidInput("loops are not allowed (vertex " + std::to_string(u) + ")");
  auto& au = adj_[static_cast<std::size_t>(u)];
  const auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v)
    throw InvalidInput("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
  au.insert(it, v);
  auto& av = adj_[static_cast<std::size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edges_;
}

bool LabeledGraph::has_edge(int u, int v) const {
  const auto& au = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (int v : adj_[u])
      if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
  return out;
}

std::vector<int> bfs_distances(const LabeledGraph& g, int src) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u))
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

bool is_connected(const LabeledGraph& g) {
  if (g.size() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int x) { return x < 0; });
}

bool is_proper_coloring(const LabeledGraph& g, std::span<const int> colors) {
  if (colors.size() != g.size()) return false;
  for (const auto& [u, v] : g.edges())
    if (colors[static_cast<std::size_t>(u)] == colors[static_cast<std::size_t>(v)]) return false;
  return true;
}

LabeledGraph induced_subgraph(const LabeledGraph& g, std::span<const int> vertices) {
  LabeledGraph out(vertices.size());
  std::vector<int> index(g.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (int w : g.neighbors(vertices[i])) {
      const int j = index[static_cast<std::size_t>(w)];
      if (j > static_cast<int>(i)) out.add_edge(static_cast<int>(i), j);
    }
  auto pick = [&](const std::vector<int>& src) {
    std::vector<int> dst;
    for (int v : vertices) dst.push_back(src[static_cast<std::size_t>(v)]);
    return dst;
  };
  if (g.tau) out.tau = pick(*g.tau);
  if (g.dist) out.dist = pick(*g.dist);
  if (!g.payload.empty())
    for (int v : vertices) out.payload.push_back(g.payload[static_cast<std::size_t>(v)]);
  out.meta = g.meta;
  return out;
}

LabeledGraph relabel(const LabeledGraph& g, std::span<const int> perm) {
  if (perm.size() != g.size()) throw InvalidInput("permutation size differs from vertex count");
  std::vector<int> inverse(g.size(), -1);
  for (std::size_t v = 0; v < perm.size(); ++v) {
    const int w = perm[v];
    if (w < 0 || static_cast<std::size_t>(w) >= g.size() || inverse[static_cast<std::size_t>(w)] >= 0)
      throw InvalidInput("not a permutation");
    inverse[static_cast<std::size_t>(w)] = static_cast<int>(v);
  }
  auto out = induced_subgraph(g, inverse);
  return out;
}

LabeledGraph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  LabeledGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

LabeledGraph path_graph(int n) {
  if (n < 1) throw InvalidInput("path needs at least 1 vertex");
  LabeledGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

}  // namespace btlab

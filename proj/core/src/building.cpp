#include "btlab/building.hpp"

#include <algorithm>
#include <numeric>

namespace btlab {

int type_label(const SubmoduleRep& module) {
  const auto n = invariant_factors(module);
  const int d = module.rank();
  const int sum = std::accumulate(n.begin(), n.end(), 0);
  return ((-sum) % d + d) % d;
}

int distance_origin(const SubmoduleRep& module) { return invariant_factors(module).back(); }

Ball build_ball(const ResidueRing& ring, int d, const Budget& budget) {
  if (d < 2) throw InvalidInput("building rank d must be >= 2");
  Ball ball{ring, d, enumerate_vertex_modules(ring, d, budget), LabeledGraph()};
  const auto& mods = ball.modules;
  const std::size_t n = mods.size();
  LabeledGraph& g = ball.graph;
  g = LabeledGraph(n);

  std::vector<SubmoduleRep> scaled;
  std::vector<int> log_size(n), log_scaled(n);
  scaled.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled.push_back(scale_by_uniformizer(mods[i]));
    log_size[i] = mods[i].log_size();
    log_scaled[i] = scaled[i].log_size();
  }
  std::vector<std::size_t> by_size(n);
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) { return log_size[a] < log_size[b]; });

  std::vector<std::pair<int, int>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    // Candidates V with |U pi| <= |V| < |U|.
    const auto lo = std::lower_bound(by_size.begin(), by_size.end(), log_scaled[u],
                                     [&](std::size_t v, int value) { return log_size[v] < value; });
    for (auto it = lo; it != by_size.end() && log_size[*it] < log_size[u]; ++it) {
      const std::size_t v = *it;
      if (contains(mods[u], mods[v]) && contains(mods[v], scaled[u]))
        edges.emplace_back(static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [u, v] : edges) g.add_edge(u, v);

  const auto dist = bfs_distances(g, 0);
  if (std::any_of(dist.begin(), dist.end(), [](int x) { return x < 0; }))
    throw VerificationFailure("building ball is not connected");
  g.dist = dist;
  for (const auto& m : mods) g.payload.push_back(m.format());
  g.meta = {{"descriptor", to_json(ring.descriptor())}, {"R", ring.precision()}, {"d", d}};

  if (ring.is_commutative()) {
    std::vector<int> tau(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto factors = invariant_factors(mods[i]);
      if (factors.front() != 0) throw VerificationFailure("vertex module inside pi (O_R)^d");
      if (factors.back() != dist[i])
        throw VerificationFailure("largest invariant factor of vertex " + std::to_string(i) + " differs from BFS distance");
      const int sum = std::accumulate(factors.begin(), factors.end(), 0);
      tau[i] = ((-sum) % d + d) % d;
    }
    g.tau = std::move(tau);
  }
  return ball;
}

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  // Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int j = std::min(m, k); j >= 1; --j) {
      std::uint64_t qj = 1;
      for (int t = 0; t < j; ++t) qj *= q;
      row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + qj * row[static_cast<std::size_t>(j)];
    }
  return row[static_cast<std::size_t>(k)];
}

DegreeFormula degree_closed_form(std::uint64_t q, int d) {
  if (q < 2 || d < 1) throw InvalidInput("degree_closed_form needs q >= 2 and d >= 1");
  DegreeFormula out;
  for (int k = 1; k < d; ++k) out.subspaces += gaussian_binomial(d, k, q);
  out.product = 1;
  std::uint64_t qi = 1;
  for (int i = 1; i <= d; ++i) {
    qi *= q;
    out.product *= (qi - 1) / (q - 1);
  }
  return out;
}

LabeledGraph truncate_ball(const LabeledGraph& ball, int radius) {
  if (!ball.dist) throw InvalidInput("graph has no distance annotation");
  std::vector<int> keep;
  for (std::size_t v = 0; v < ball.size(); ++v)
    if ((*ball.dist)[v] <= radius) keep.push_back(static_cast<int>(v));
  return induced_subgraph(ball, keep);
}

}  // namespace btlab

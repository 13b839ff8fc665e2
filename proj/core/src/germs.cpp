#include "btlab/germs.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace btlab {

int Germ::color_of(int v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return -1;
  return colors[static_cast<std::size_t>(it - vertices.begin())];
}

Germ apply_symmetry(const Germ& germ, const std::vector<int>& sigma) {
  Germ out = germ;
  for (auto& c : out.colors) c = sigma[static_cast<std::size_t>(c)];
  return out;
}

struct GermLabeler::Local {
  std::vector<int> vertices;               // V(x), sorted
  std::vector<std::vector<int>> adj;       // local indices
  bool feasible = true;
  // Flags through x with |I| - 2 vertices and the m their residue realises.
  std::vector<std::vector<int>> polygon_flags;
  std::vector<int> polygon_m;
  std::vector<std::vector<int>> flags_of;  // local vertex -> polygon flag indices
};

GermLabeler::GermLabeler(const LabeledGraph& g, CoxeterDiagram m, const Budget& budget)
    : g_(g), m_(std::move(m)), budget_(budget), symmetries_(diagram_symmetries(m_)), cache_(g.size()) {}

GermLabeler::~GermLabeler() = default;

const GermLabeler::Local& GermLabeler::local(int x) {
  if (x < 0 || static_cast<std::size_t>(x) >= g_.size()) throw InvalidInput("vertex out of range");
  auto& slot = cache_[static_cast<std::size_t>(x)];
  if (slot) return *slot;
  auto loc = std::make_unique<Local>();
  loc->vertices = g_.neighbors(x);
  loc->vertices.insert(std::lower_bound(loc->vertices.begin(), loc->vertices.end(), x), x);
  const auto& vs = loc->vertices;
  auto index = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  loc->adj.resize(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int w : g_.neighbors(vs[i]))
      if (std::binary_search(vs.begin(), vs.end(), w)) loc->adj[i].push_back(index(w));
  loc->flags_of.resize(vs.size());

  const int n = m_.rank();
  std::vector<int> flag{x};
  // Walks the cliques through x; residues of such flags lie inside N(x).
  auto walk = [&](auto&& self, const std::vector<int>& members) -> void {
    if (!loc->feasible) return;
    const int size = static_cast<int>(flag.size());
    if (size > n) {
      loc->feasible = false;
      return;
    }
    const int free = n - size;
    if (free >= 1 && members.empty()) {
      loc->feasible = false;
      return;
    }
    if (free >= 2) {
      const auto residue = induced_subgraph(g_, members);
      if (!is_connected(residue)) {
        loc->feasible = false;
        return;
      }
      if (free == 2) {
        int diameter = 0;
        for (std::size_t s = 0; s < residue.size(); ++s) {
          const auto dist = bfs_distances(residue, static_cast<int>(s));
          diameter = std::max(diameter, *std::max_element(dist.begin(), dist.end()));
        }
        if (!is_generalized_mgon(residue, diameter).ok) {
          loc->feasible = false;
          return;
        }
        std::vector<int> local_flag;
        for (int v : flag) local_flag.push_back(index(v));
        for (int li : local_flag) loc->flags_of[static_cast<std::size_t>(li)].push_back(static_cast<int>(loc->polygon_flags.size()));
        loc->polygon_flags.push_back(std::move(local_flag));
        loc->polygon_m.push_back(diameter);
      }
    }
    for (int v : members) {
      if (flag.size() > 1 && v < flag.back()) continue;
      std::vector<int> next;
      const auto& nb = g_.neighbors(v);
      std::set_intersection(members.begin(), members.end(), nb.begin(), nb.end(), std::back_inserter(next));
      flag.push_back(v);
      self(self, next);
      flag.pop_back();
    }
  };
  walk(walk, g_.neighbors(x));
  slot = std::move(loc);
  return *slot;
}

std::vector<Germ> GermLabeler::search(int x, const std::vector<int>& fixed, std::size_t limit) {
  const Local& loc = local(x);
  std::vector<Germ> out;
  if (!loc.feasible) return out;
  const int n = m_.rank();
  const std::size_t size = loc.vertices.size();
  std::vector<int> color(size, -1);

  auto polygon_ok = [&](std::size_t f) {
    const auto& members = loc.polygon_flags[f];
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int li : members) {
      const int c = color[static_cast<std::size_t>(li)];
      if (c < 0) return true;
      used[static_cast<std::size_t>(c)] = true;
    }
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)]) (a < 0 ? a : b) = i;
    return !m_.is_infinite(a, b) && m_(a, b) == loc.polygon_m[f];
  };
  auto consistent = [&](std::size_t v) {
    for (int w : loc.adj[v])
      if (color[static_cast<std::size_t>(w)] == color[v]) return false;
    for (int f : loc.flags_of[v])
      if (!polygon_ok(static_cast<std::size_t>(f))) return false;
    return true;
  };

  for (std::size_t v = 0; v < size; ++v) {
    if (fixed[v] < 0) continue;
    if (fixed[v] >= n) return out;
    color[v] = fixed[v];
  }
  for (std::size_t v = 0; v < size; ++v)
    if (color[v] >= 0 && !consistent(v)) return out;

  std::size_t nodes = 0;
  auto dfs = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    // Most constrained unassigned vertex.
    std::size_t best = size;
    int best_options = n + 1;
    for (std::size_t v = 0; v < size; ++v) {
      if (color[v] >= 0) continue;
      std::vector<bool> blocked(static_cast<std::size_t>(n), false);
      for (int w : loc.adj[v])
        if (const int c = color[static_cast<std::size_t>(w)]; c >= 0) blocked[static_cast<std::size_t>(c)] = true;
      const int options = static_cast<int>(std::count(blocked.begin(), blocked.end(), false));
      if (options < best_options) {
        best_options = options;
        best = v;
      }
    }
    if (best == size) {
      out.push_back({x, loc.vertices, color});
      return;
    }
    if (best_options == 0) return;
    for (int c = 0; c < n; ++c) {
      if (++nodes > budget_.max_search_nodes) throw_budget("germ search nodes", nodes, budget_.max_search_nodes);
      color[best] = c;
      if (consistent(best)) self(self);
      color[best] = -1;
      if (out.size() >= limit) return;
    }
  };
  dfs(dfs);
  std::sort(out.begin(), out.end());
  return out;
}

GermSet GermLabeler::germs_at(int x) {
  GermSet out;
  const Local& loc = local(x);
  out.germs = search(x, std::vector<int>(loc.vertices.size(), -1), SIZE_MAX);
  if (out.germs.empty()) return out;
  std::set<std::vector<int>> orbit;
  out.stabilizer = 0;
  for (const auto& sigma : symmetries_) {
    const auto image = apply_symmetry(out.germs.front(), sigma);
    orbit.insert(image.colors);
    if (image == out.germs.front()) ++out.stabilizer;
  }
  std::set<std::vector<int>> all;
  for (const auto& germ : out.germs) all.insert(germ.colors);
  out.single_orbit = orbit == all;
  return out;
}

Germ GermLabeler::transport(const Germ& germ, int y) {
  const int x = germ.center;
  if (x < 0 || y < 0 || static_cast<std::size_t>(std::max(x, y)) >= g_.size() || !g_.has_edge(x, y))
    throw InvalidInput("transport needs adjacent vertices");
  const Local& loc = local(y);
  std::vector<int> fixed(loc.vertices.size(), -1);
  for (std::size_t i = 0; i < loc.vertices.size(); ++i) fixed[i] = germ.color_of(loc.vertices[i]);
  auto found = search(y, fixed, 2);
  const std::string edge = std::to_string(x) + " -> " + std::to_string(y);
  if (found.empty()) throw TransportError(TransportStatus::NoExtension, x, y, "no germ extends across " + edge);
  if (found.size() > 1) throw TransportError(TransportStatus::NotUnique, x, y, "germ extension across " + edge + " is not unique");
  return std::move(found.front());
}

GermSet germs_at(const LabeledGraph& g, int x, const CoxeterDiagram& m, const Budget& budget) {
  GermLabeler labeler(g, m, budget);
  return labeler.germs_at(x);
}

Germ transport(const LabeledGraph& g, const CoxeterDiagram& m, const Germ& germ, int y, const Budget& budget) {
  GermLabeler labeler(g, m, budget);
  return labeler.transport(germ, y);
}

PropagationResult propagate(GermLabeler& labeler, const Germ& seed, const std::vector<bool>* domain) {
  const auto& g = labeler.graph();
  const std::size_t n = g.size();
  const std::vector<bool> everything(n, true);
  const auto& in = domain ? *domain : everything;
  if (in.size() != n) throw InvalidInput("domain size differs from vertex count");
  const int root = seed.center;
  if (root < 0 || static_cast<std::size_t>(root) >= n || !in[static_cast<std::size_t>(root)])
    throw InvalidInput("basepoint outside the propagation domain");
  const auto at_root = labeler.germs_at(root).germs;
  if (std::find(at_root.begin(), at_root.end(), seed) == at_root.end()) throw InvalidInput("seed is not a germ at the basepoint");

  PropagationResult result;
  std::vector<std::optional<Germ>> germ(n);
  std::vector<int> parent(n, -1), depth(n, -1);
  germ[static_cast<std::size_t>(root)] = seed;
  depth[static_cast<std::size_t>(root)] = 0;
  std::deque<int> queue{root};
  auto fail = [&](const TransportError& err) {
    result.status = PropagationStatus::TransportFailure;
    result.failure = err.status();
    result.failing_edge = {err.from(), err.to()};
    result.detail = err.what();
    return result;
  };

  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (!in[static_cast<std::size_t>(w)] || depth[static_cast<std::size_t>(w)] >= 0) continue;
      try {
        germ[static_cast<std::size_t>(w)] = labeler.transport(*germ[static_cast<std::size_t>(u)], w);
      } catch (const TransportError& err) {
        return fail(err);
      }
      parent[static_cast<std::size_t>(w)] = u;
      depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(u)] + 1;
      queue.push_back(w);
    }
  }

  for (const auto& [u, w] : g.edges()) {
    if (!in[static_cast<std::size_t>(u)] || !in[static_cast<std::size_t>(w)]) continue;
    if (depth[static_cast<std::size_t>(u)] < 0 || depth[static_cast<std::size_t>(w)] < 0) continue;
    if (parent[static_cast<std::size_t>(w)] == u || parent[static_cast<std::size_t>(u)] == w) continue;
    Germ moved;
    try {
      moved = labeler.transport(*germ[static_cast<std::size_t>(u)], w);
    } catch (const TransportError& err) {
      return fail(err);
    }
    if (moved == *germ[static_cast<std::size_t>(w)]) continue;

    // Fundamental cycle of the non-tree edge (u, w).
    std::vector<int> up, down;
    int a = u, b = w;
    while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]) {
      up.push_back(a);
      a = parent[static_cast<std::size_t>(a)];
    }
    while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)]) {
      down.push_back(b);
      b = parent[static_cast<std::size_t>(b)];
    }
    while (a != b) {
      up.push_back(a);
      down.push_back(b);
      a = parent[static_cast<std::size_t>(a)];
      b = parent[static_cast<std::size_t>(b)];
    }
    result.status = PropagationStatus::Obstruction;
    result.cycle.push_back(a);
    result.cycle.insert(result.cycle.end(), down.rbegin(), down.rend());
    result.cycle.insert(result.cycle.end(), up.begin(), up.end());
    result.failing_edge = {u, w};
    result.detail = "holonomy around a cycle of length " + std::to_string(result.cycle.size()) + " is not trivial";
    return result;
  }

  result.tau.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    if (germ[v]) result.tau[v] = germ[v]->color_of(static_cast<int>(v));
  for (std::size_t v = 0; v < n; ++v) {
    if (!germ[v]) continue;
    for (std::size_t i = 0; i < germ[v]->vertices.size(); ++i) {
      const int y = germ[v]->vertices[i];
      if (result.tau[static_cast<std::size_t>(y)] >= 0 && result.tau[static_cast<std::size_t>(y)] != germ[v]->colors[i])
        throw VerificationFailure("propagated labelling disagrees with the germ at vertex " + std::to_string(v));
    }
  }
  return result;
}

bool CycleCertificate::passed() const {
  return std::all_of(classes.begin(), classes.end(), [](const CycleClassReport& c) { return c.failures == 0; });
}

CycleCertificate short_cycle_certificate(GermLabeler& labeler, int k, const std::vector<bool>* domain) {
  if (k < 2) throw InvalidInput("short_cycle_certificate needs k >= 2");
  const auto& g = labeler.graph();
  const std::size_t n = g.size();
  const std::vector<bool> everything(n, true);
  const auto& in = domain ? *domain : everything;
  if (in.size() != n) throw InvalidInput("domain size differs from vertex count");

  CycleCertificate cert;
  cert.k = k;
  for (int len = 2; len <= k; ++len) cert.classes.push_back({len, 0, 0, {}});

  auto holonomy_trivial = [&](const std::vector<int>& path) {
    for (const auto& start : labeler.germs_at(path.front()).germs) {
      Germ cur = start;
      for (std::size_t i = 1; i < path.size(); ++i) cur = labeler.transport(cur, path[i]);
      cur = labeler.transport(cur, path.front());
      if (!(cur == start)) return false;
    }
    return true;
  };
  auto record = [&](const std::vector<int>& path) {
    auto& cls = cert.classes[path.size() - 2];
    ++cls.checked;
    if (!holonomy_trivial(path)) {
      if (cls.failures == 0) cls.example = path;
      ++cls.failures;
    }
  };

  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x]) continue;
    for (int y : g.neighbors(static_cast<int>(x)))
      if (in[static_cast<std::size_t>(y)]) record({static_cast<int>(x), y});
  }

  // Simple cycles through their smallest vertex s, each orientation once.
  std::vector<int> path;
  std::vector<bool> on_path(n, false);
  auto extend = [&](auto&& self, int s) -> void {
    const int last = path.back();
    for (int w : g.neighbors(last)) {
      if (w < s || !in[static_cast<std::size_t>(w)]) continue;
      if (w == s) {
        if (path.size() >= 3 && path[1] < path.back()) record(path);
        continue;
      }
      if (on_path[static_cast<std::size_t>(w)] || static_cast<int>(path.size()) >= k) continue;
      path.push_back(w);
      on_path[static_cast<std::size_t>(w)] = true;
      self(self, s);
      on_path[static_cast<std::size_t>(w)] = false;
      path.pop_back();
    }
  };
  if (k >= 3) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!in[s]) continue;
      path = {static_cast<int>(s)};
      on_path[s] = true;
      extend(extend, static_cast<int>(s));
      on_path[s] = false;
    }
  }
  return cert;
}

}  // namespace btlab

#include "btlab/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "btlab/error.hpp"

namespace btlab {

CoxeterDiagram CoxeterDiagram::from_matrix(int n, std::vector<int> entries) {
  if (n < 1) throw InvalidInput("Coxeter diagram needs a nonempty index set");
  if (entries.size() != static_cast<std::size_t>(n * n)) throw InvalidInput("Coxeter matrix must be n x n");
  CoxeterDiagram out;
  out.n_ = n;
  out.m_ = std::move(entries);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int v = out(i, j);
      if (i == j && v != 1) throw InvalidInput("Coxeter diagram needs M(i,i) = 1");
      if (i != j && v != kInfinity && v < 2) throw InvalidInput("Coxeter diagram needs M(i,j) >= 2 off the diagonal");
      if (v != out(j, i)) throw InvalidInput("Coxeter diagram must be symmetric");
    }
  return out;
}

std::string CoxeterDiagram::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    if (i) os << ";";
    for (int j = 0; j < n_; ++j) {
      if (j) os << ",";
      if (is_infinite(i, j))
        os << "inf";
      else
        os << (*this)(i, j);
    }
  }
  return os.str();
}

CoxeterDiagram atilde_diagram(int d) {
  if (d < 3) throw InvalidInput("atilde_diagram needs d >= 3 (the d = 2 case is the infinite-bond diagram)");
  std::vector<int> m(static_cast<std::size_t>(d * d), 2);
  for (int i = 0; i < d; ++i) {
    m[static_cast<std::size_t>(i * d + i)] = 1;
    m[static_cast<std::size_t>(i * d + (i + 1) % d)] = 3;
    m[static_cast<std::size_t>(((i + 1) % d) * d + i)] = 3;
  }
  return CoxeterDiagram::from_matrix(d, std::move(m));
}

CoxeterDiagram polygon_diagram(int m) { return CoxeterDiagram::from_matrix(2, {1, m, m, 1}); }

CoxeterDiagram parse_diagram(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("diagram must be 'atilde:d' or 'polygon:m'");
  const auto kind = text.substr(0, colon);
  int value = 0;
  try {
    value = std::stoi(std::string(text.substr(colon + 1)));
  } catch (const std::exception&) {
    throw InvalidInput("diagram parameter must be an integer");
  }
  if (kind == "atilde") return atilde_diagram(value);
  if (kind == "polygon") return polygon_diagram(value);
  throw InvalidInput("unknown diagram kind '" + std::string(kind) + "'");
}

std::vector<std::vector<int>> diagram_symmetries(const CoxeterDiagram& m) {
  const int n = m.rank();
  if (n > 8) throw BudgetExceeded("diagram_symmetries supports rank <= 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) ok = m(i, j) == m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

MgonCheck is_generalized_mgon(const LabeledGraph& g, int m) {
  if (m < 2) return {false, "m must be >= 2"};
  if (g.size() == 0) return {false, "empty graph"};
  if (!is_connected(g)) return {false, "not connected"};
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(static_cast<int>(v)) < 2) return {false, "vertex " + std::to_string(v) + " has degree < 2"};

  const int n = static_cast<int>(g.size());
  std::vector<int> side(g.size(), -1);
  side[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (side[static_cast<std::size_t>(w)] < 0) {
        side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(u)];
        queue.push_back(w);
      } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(u)]) {
        return {false, "not bipartite"};
      }
    }
  }

  int diameter = 0;
  int girth = std::numeric_limits<int>::max();
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(g.size(), -1), parent(g.size(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      diameter = std::max(diameter, dist[static_cast<std::size_t>(u)]);
      for (int w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(w)] = u;
          q.push_back(w);
        } else if (parent[static_cast<std::size_t>(u)] != w) {
          girth = std::min(girth, dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1);
        }
      }
    }
  }
  if (diameter != m) return {false, "diameter " + std::to_string(diameter) + " != " + std::to_string(m)};
  if (girth == std::numeric_limits<int>::max()) return {false, "acyclic (girth infinite)"};
  if (girth != 2 * m) return {false, "girth " + std::to_string(girth) + " != " + std::to_string(2 * m)};
  return {true, {}};
}

namespace {

std::vector<int> common_neighbors(const LabeledGraph& g, std::span<const int> flag) {
  std::vector<int> out;
  if (flag.empty()) {
    out.resize(g.size());
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  out = g.neighbors(flag[0]);
  for (std::size_t i = 1; i < flag.size(); ++i) {
    std::vector<int> next;
    const auto& nb = g.neighbors(flag[i]);
    std::set_intersection(out.begin(), out.end(), nb.begin(), nb.end(), std::back_inserter(next));
    out = std::move(next);
  }
  return out;
}

}  // namespace

LabeledGraph residue_of_flag(const LabeledGraph& geo, std::span<const int> flag, std::vector<int>* vertex_map) {
  for (std::size_t i = 0; i < flag.size(); ++i) {
    if (flag[i] < 0 || static_cast<std::size_t>(flag[i]) >= geo.size()) throw InvalidInput("flag vertex out of range");
    for (std::size_t j = i + 1; j < flag.size(); ++j)
      if (!geo.has_edge(flag[i], flag[j])) throw InvalidInput("flag vertices are not pairwise adjacent");
  }
  const auto members = common_neighbors(geo, flag);
  if (vertex_map) *vertex_map = members;
  return induced_subgraph(geo, members);
}

std::vector<bool> interior_scope(const LabeledGraph& ball, int radius, int margin) {
  std::vector<bool> out(ball.size(), true);
  if (!ball.dist) return out;
  for (std::size_t v = 0; v < ball.size(); ++v) out[v] = (*ball.dist)[v] <= radius - margin;
  return out;
}

std::vector<bool> full_scope(const LabeledGraph& g) { return std::vector<bool>(g.size(), true); }

GeometryReport verify_geometry(const LabeledGraph& geo, const CoxeterDiagram& m, const std::vector<bool>& scope) {
  if (!geo.tau) throw InvalidInput("verify_geometry needs a colored graph");
  if (scope.size() != geo.size()) throw InvalidInput("scope size differs from vertex count");
  const auto& tau = *geo.tau;
  const int n = m.rank();
  GeometryReport report;

  for (std::size_t v = 0; v < geo.size(); ++v)
    if (tau[v] < 0 || tau[v] >= n)
      report.violations.push_back({{static_cast<int>(v)}, {tau[v]}, "coloring", "color outside the index set"});
  for (const auto& [u, v] : geo.edges())
    if (tau[static_cast<std::size_t>(u)] == tau[static_cast<std::size_t>(v)])
      report.violations.push_back({{u, v}, {tau[static_cast<std::size_t>(u)]}, "coloring", "adjacent vertices share a color"});
  if (!report.ok()) return report;

  std::vector<int> flag;
  auto check = [&](const std::vector<int>& members) {
    ++report.flags_checked;
    std::vector<int> type;
    for (int v : flag) type.push_back(tau[static_cast<std::size_t>(v)]);
    std::sort(type.begin(), type.end());
    const int free = n - static_cast<int>(flag.size());
    auto fail = [&](std::string cond, std::string detail) {
      report.violations.push_back({flag, type, std::move(cond), std::move(detail)});
    };
    if (free >= 1 && members.empty()) {
      fail("nonempty", "residue is empty");
      return;
    }
    if (free < 2) return;
    const auto residue = induced_subgraph(geo, members);
    if (!is_connected(residue)) {
      fail("connected", "residue has " + std::to_string(members.size()) + " vertices but is not connected");
      return;
    }
    if (free == 2) {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (!std::binary_search(type.begin(), type.end(), i)) rest.push_back(i);
      if (m.is_infinite(rest[0], rest[1])) {
        fail("polygon", "infinite diagram entry has no polygon test");
        return;
      }
      const int mm = m(rest[0], rest[1]);
      if (const auto res = is_generalized_mgon(residue, mm); !res.ok)
        fail("polygon", "not a generalized " + std::to_string(mm) + "-gon: " + res.reason);
    }
  };

  auto extend = [&](auto&& self, const std::vector<int>& members) -> void {
    check(members);
    if (static_cast<int>(flag.size()) >= n) return;
    for (int v : members) {
      if (!scope[static_cast<std::size_t>(v)] || (!flag.empty() && v < flag.back())) continue;
      std::vector<int> next;
      const auto& nb = geo.neighbors(v);
      std::set_intersection(members.begin(), members.end(), nb.begin(), nb.end(), std::back_inserter(next));
      flag.push_back(v);
      self(self, next);
      flag.pop_back();
    }
  };
  extend(extend, common_neighbors(geo, {}));
  return report;
}

}  // namespace btlab

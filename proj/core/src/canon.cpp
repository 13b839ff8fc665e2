#include "btlab/canon.hpp"

#include <algorithm>
#include <numeric>

#include "btlab/digest.hpp"

namespace btlab {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

void put32(std::string& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<char>((v >> s) & 0xff));
}

class Canonizer {
 public:
  Canonizer(const LabeledGraph& g, const CanonOptions& options, const Budget& budget)
      : g_(g), opt_(options), budget_(budget), n_(g.size()) {}

  // Initial ordered partition: cells by (tau, dist) as requested. cell[v] is
  // the start position of v's cell.
  std::vector<int> initial_partition() const {
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    for (std::size_t v = 0; v < n_; ++v) keyed.push_back({label_key(static_cast<int>(v)), static_cast<int>(v)});
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> cell(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const bool fresh = i == 0 || keyed[i].first != keyed[i - 1].first;
      cell[static_cast<std::size_t>(keyed[i].second)] = fresh ? static_cast<int>(i) : cell[static_cast<std::size_t>(keyed[i - 1].second)];
    }
    return cell;
  }

  std::pair<int, int> label_key(int v) const {
    const int t = opt_.use_colors && g_.tau ? (*g_.tau)[static_cast<std::size_t>(v)] : 0;
    const int d = opt_.use_distance && g_.dist ? (*g_.dist)[static_cast<std::size_t>(v)] : 0;
    return {t, d};
  }

  // Refines to the coarsest equitable partition below `cell`; returns a trace
  // hash that is invariant under isomorphism.
  std::uint64_t refine(std::vector<int>& cell) const {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> sig(n_);
    std::uint64_t trace = 0xcbf29ce484222325ULL;
    std::size_t cells = count_cells(cell);
    while (true) {
      for (std::size_t v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        for (int w : g_.neighbors(static_cast<int>(v))) s.push_back(cell[static_cast<std::size_t>(w)]);
        std::sort(s.begin(), s.end());
      }
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ca = cell[static_cast<std::size_t>(a)], cb = cell[static_cast<std::size_t>(b)];
        if (ca != cb) return ca < cb;
        return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
      });
      std::vector<int> next(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const int v = order[i];
        const bool fresh = i == 0 || cell[static_cast<std::size_t>(order[i - 1])] != cell[static_cast<std::size_t>(v)] ||
                           sig[static_cast<std::size_t>(order[i - 1])] != sig[static_cast<std::size_t>(v)];
        next[static_cast<std::size_t>(v)] = fresh ? static_cast<int>(i) : next[static_cast<std::size_t>(order[i - 1])];
      }
      const std::size_t next_cells = count_cells(next);
      cell = std::move(next);
      if (next_cells == cells) break;
      cells = next_cells;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const int v = order[i];
      if (cell[static_cast<std::size_t>(v)] != static_cast<int>(i)) continue;
      trace = mix(trace, i);
      for (int c : sig[static_cast<std::size_t>(v)]) trace = mix(trace, static_cast<std::uint64_t>(c) + 1);
    }
    return trace;
  }

  static std::size_t count_cells(const std::vector<int>& cell) {
    std::size_t count = 0;
    std::vector<char> seen(cell.size(), 0);
    for (int c : cell)
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        ++count;
      }
    return count;
  }

  std::string encode(const std::vector<int>& lab) const {
    std::string out;
    put32(out, static_cast<std::uint32_t>(n_));
    put32(out, (opt_.use_colors ? 1U : 0U) | (opt_.use_distance ? 2U : 0U));
    if (opt_.use_colors || opt_.use_distance) {
      std::vector<std::pair<int, int>> keys(n_);
      for (std::size_t v = 0; v < n_; ++v) keys[static_cast<std::size_t>(lab[v])] = label_key(static_cast<int>(v));
      for (const auto& [t, d] : keys) {
        put32(out, static_cast<std::uint32_t>(t));
        put32(out, static_cast<std::uint32_t>(d));
      }
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g_.edge_count());
    for (const auto& [u, v] : g_.edges()) {
      const int a = lab[static_cast<std::size_t>(u)], b = lab[static_cast<std::size_t>(v)];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    put32(out, static_cast<std::uint32_t>(edges.size()));
    for (const auto& [a, b] : edges) {
      put32(out, static_cast<std::uint32_t>(a));
      put32(out, static_cast<std::uint32_t>(b));
    }
    return out;
  }

  CanonicalCertificate run() {
    auto cell = initial_partition();
    std::vector<std::uint64_t> path{refine(cell)};
    std::vector<int> fixed;
    dfs(cell, path, fixed);

    CanonicalCertificate cert;
    cert.encoding = to_hex(best_encoding_);
    cert.digest = sha256_hex(cert.encoding);
    cert.labeling = best_lab_;
    cert.search_nodes = nodes_;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : automorphisms_)
      for (std::size_t v = 0; v < n_; ++v) unite(parent, static_cast<int>(v), gamma[v]);
    std::vector<std::vector<int>> by_root(n_);
    for (std::size_t v = 0; v < n_; ++v) by_root[static_cast<std::size_t>(find(parent, static_cast<int>(v)))].push_back(static_cast<int>(v));
    for (auto& orbit : by_root)
      if (!orbit.empty()) cert.orbits.push_back(std::move(orbit));
    std::sort(cert.orbits.begin(), cert.orbits.end());
    return cert;
  }

 private:
  static int find(std::vector<int>& parent, int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  static void unite(std::vector<int>& parent, int a, int b) {
    a = find(parent, a);
    b = find(parent, b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  // -1, 0, 1 comparing path against the best leaf's path on the common prefix;
  // a path extending the best path compares greater.
  int compare_prefix(const std::vector<std::uint64_t>& path) const {
    const std::size_t k = std::min(path.size(), best_path_.size());
    for (std::size_t i = 0; i < k; ++i)
      if (path[i] != best_path_[i]) return path[i] < best_path_[i] ? -1 : 1;
    return path.size() > best_path_.size() ? 1 : 0;
  }

  void dfs(const std::vector<int>& cell, std::vector<std::uint64_t>& path, std::vector<int>& fixed) {
    if (++nodes_ > budget_.max_search_nodes) throw_budget("canonical form search nodes", nodes_, budget_.max_search_nodes);
    if (have_best_ && compare_prefix(path) > 0) return;

    std::vector<int> size(n_, 0);
    for (int c : cell) ++size[static_cast<std::size_t>(c)];
    int target = -1;
    for (std::size_t c = 0; c < n_; ++c)
      if (size[c] > 1 && (target < 0 || size[c] < size[static_cast<std::size_t>(target)])) target = static_cast<int>(c);

    if (target < 0) {
      leaf(cell, path, fixed);
      return;
    }

    std::vector<int> members;
    for (std::size_t v = 0; v < n_; ++v)
      if (cell[v] == target) members.push_back(static_cast<int>(v));
    std::vector<int> explored;
    for (int v : members) {
      if (!explored.empty() && equivalent_to_explored(v, explored, fixed)) continue;
      auto child = cell;
      for (int w : members) child[static_cast<std::size_t>(w)] = target + 1;
      child[static_cast<std::size_t>(v)] = target;
      path.push_back(refine(child));
      fixed.push_back(v);
      dfs(child, path, fixed);
      fixed.pop_back();
      path.pop_back();
      explored.push_back(v);
      if (jump_ < fixed.size()) return;
      jump_ = kNoJump;
    }
  }

  // True if v shares an orbit with an explored sibling under the found
  // automorphisms that fix the current individualized vertices.
  bool equivalent_to_explored(int v, const std::vector<int>& explored, const std::vector<int>& fixed) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    bool any = false;
    for (const auto& gamma : automorphisms_) {
      if (!std::all_of(fixed.begin(), fixed.end(), [&](int f) { return gamma[static_cast<std::size_t>(f)] == f; })) continue;
      any = true;
      for (std::size_t w = 0; w < n_; ++w) unite(parent, static_cast<int>(w), gamma[w]);
    }
    if (!any) return false;
    const int root = find(parent, v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(parent, u) == root; });
  }

  void leaf(const std::vector<int>& cell, const std::vector<std::uint64_t>& path, const std::vector<int>& fixed) {
    const auto& lab = cell;  // discrete: cell id = canonical position
    auto enc = encode(lab);
    if (!have_best_ || compare_prefix(path) < 0 || (path == best_path_ && enc < best_encoding_)) {
      have_best_ = true;
      best_path_ = path;
      best_encoding_ = std::move(enc);
      best_lab_ = lab;
      best_fixed_ = fixed;
      return;
    }
    if (path == best_path_ && enc == best_encoding_) {
      // The subtree below the common ancestor with the best leaf is an image
      // of one already explored.
      std::size_t common = 0;
      while (common < fixed.size() && common < best_fixed_.size() && fixed[common] == best_fixed_[common]) ++common;
      jump_ = common;
      // v -> the vertex occupying v's position in the best leaf.
      std::vector<int> at(n_);
      for (std::size_t w = 0; w < n_; ++w) at[static_cast<std::size_t>(best_lab_[w])] = static_cast<int>(w);
      std::vector<int> gamma(n_);
      for (std::size_t v = 0; v < n_; ++v) gamma[v] = at[static_cast<std::size_t>(lab[v])];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  const LabeledGraph& g_;
  CanonOptions opt_;
  Budget budget_;
  std::size_t n_;
  std::size_t nodes_ = 0;
  bool have_best_ = false;
  std::vector<std::uint64_t> best_path_;
  std::string best_encoding_;
  std::vector<int> best_lab_;
  std::vector<int> best_fixed_;
  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);
  std::size_t jump_ = kNoJump;
  std::vector<std::vector<int>> automorphisms_;
};

void check_input(const LabeledGraph& g, const CanonOptions& options) {
  if (!is_connected(g)) throw InvalidInput("canonical forms are defined for connected graphs only");
  if (options.use_colors && !g.tau) throw InvalidInput("use_colors requested but the graph has no tau");
  if (options.use_distance && !g.dist) throw InvalidInput("use_distance requested but the graph has no dist");
}

}  // namespace

CanonicalCertificate canonical_form(const LabeledGraph& g, const CanonOptions& options, const Budget& budget) {
  check_input(g, options);
  return Canonizer(g, options, budget).run();
}

bool verify_isomorphism(const LabeledGraph& g, const LabeledGraph& h, const std::vector<int>& mapping,
                        const CanonOptions& options) {
  if (g.size() != h.size() || mapping.size() != g.size() || g.edge_count() != h.edge_count()) return false;
  std::vector<bool> hit(h.size(), false);
  for (int w : mapping) {
    if (w < 0 || static_cast<std::size_t>(w) >= h.size() || hit[static_cast<std::size_t>(w)]) return false;
    hit[static_cast<std::size_t>(w)] = true;
  }
  for (const auto& [u, v] : g.edges())
    if (!h.has_edge(mapping[static_cast<std::size_t>(u)], mapping[static_cast<std::size_t>(v)])) return false;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto w = static_cast<std::size_t>(mapping[v]);
    if (options.use_colors && (*g.tau)[v] != (*h.tau)[w]) return false;
    if (options.use_distance && (*g.dist)[v] != (*h.dist)[w]) return false;
  }
  return true;
}

IsoResult are_isomorphic(const LabeledGraph& g, const LabeledGraph& h, const CanonOptions& options, const Budget& budget) {
  check_input(g, options);
  check_input(h, options);
  IsoResult out;
  auto mismatch = [&](std::string invariant, const std::string& a, const std::string& b) {
    out.invariant = std::move(invariant);
    out.detail = a + " vs " + b;
    return out;
  };
  if (g.size() != h.size()) return mismatch("vertex count", std::to_string(g.size()), std::to_string(h.size()));
  if (g.edge_count() != h.edge_count())
    return mismatch("edge count", std::to_string(g.edge_count()), std::to_string(h.edge_count()));

  auto degrees = [](const LabeledGraph& x) {
    std::vector<int> d;
    for (std::size_t v = 0; v < x.size(); ++v) d.push_back(x.degree(static_cast<int>(v)));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (const auto dg = degrees(g), dh = degrees(h); dg != dh) {
    auto summary = [](const std::vector<int>& d) {
      return "min " + std::to_string(d.front()) + " max " + std::to_string(d.back());
    };
    return mismatch("degree sequence", summary(dg), summary(dh));
  }

  Canonizer cg(g, options, budget), ch(h, options, budget);
  auto pg = cg.initial_partition(), ph = ch.initial_partition();
  const auto tg = cg.refine(pg), th = ch.refine(ph);
  if (tg != th) {
    return mismatch("refinement histogram", std::to_string(Canonizer::count_cells(pg)) + " cells",
                    std::to_string(Canonizer::count_cells(ph)) + " cells");
  }

  const auto cert_g = cg.run();
  const auto cert_h = ch.run();
  if (cert_g.encoding != cert_h.encoding) return mismatch("canonical form", cert_g.digest, cert_h.digest);

  std::vector<int> at(h.size());
  for (std::size_t w = 0; w < h.size(); ++w) at[static_cast<std::size_t>(cert_h.labeling[w])] = static_cast<int>(w);
  std::vector<int> mapping(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) mapping[v] = at[static_cast<std::size_t>(cert_g.labeling[v])];
  if (!verify_isomorphism(g, h, mapping, options)) throw VerificationFailure("isomorphism from equal certificates failed verification");
  out.mapping = std::move(mapping);
  return out;
}

}  // namespace btlab

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "btlab/building.hpp"
#include "btlab/graph.hpp"

namespace btlab::support {

inline LabeledGraph shuffled(const LabeledGraph& g, std::uint64_t seed, std::vector<int>* perm_out = nullptr) {
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  if (perm_out) *perm_out = perm;
  return relabel(g, perm);
}

inline LabeledGraph complete_bipartite(int a, int b) {
  LabeledGraph g(static_cast<std::size_t>(a + b));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

inline LabeledGraph star(int leaves) { return complete_bipartite(1, leaves); }

inline LabeledGraph petersen() {
  LabeledGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

/// Point-line incidence graph of PG(2, 2): points are the nonzero vectors of
/// F_2^3 (as bitmasks 1..7), lines their orthogonal complements. Points get
/// color 0, lines color 1.
inline LabeledGraph fano_incidence() {
  LabeledGraph g(14);
  std::vector<int> tau(14);
  for (int p = 1; p <= 7; ++p)
    for (int l = 1; l <= 7; ++l)
      if (__builtin_popcount(static_cast<unsigned>(p & l)) % 2 == 0) g.add_edge(p - 1, 7 + l - 1);
  for (int v = 0; v < 14; ++v) tau[static_cast<std::size_t>(v)] = v < 7 ? 0 : 1;
  g.tau = tau;
  return g;
}

/// Number of k-dimensional subspaces of F_p^d, counted by closing every
/// k-tuple of vectors under addition and scaling (p prime).
inline std::uint64_t count_subspaces(int p, int d, int k) {
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) size *= static_cast<std::uint64_t>(p);
  auto decode = [&](std::uint64_t id) {
    std::vector<int> v(static_cast<std::size_t>(d));
    for (auto& x : v) {
      x = static_cast<int>(id % static_cast<std::uint64_t>(p));
      id /= static_cast<std::uint64_t>(p);
    }
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    std::uint64_t id = 0;
    for (int i = d - 1; i >= 0; --i) id = id * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(v[static_cast<std::size_t>(i)]);
    return id;
  };
  std::vector<std::vector<char>> seen;
  std::vector<std::uint64_t> pick(static_cast<std::size_t>(k), 0);
  std::uint64_t target = 1;
  for (int i = 0; i < k; ++i) target *= static_cast<std::uint64_t>(p);
  while (true) {
    std::vector<char> span(size, 0);
    span[0] = 1;
    std::vector<std::uint64_t> members{0};
    for (auto gen : pick) {
      const auto gv = decode(gen);
      const auto current = members;
      for (auto m : current) {
        auto mv = decode(m);
        for (int c = 1; c < p; ++c) {
          for (int i = 0; i < d; ++i) mv[static_cast<std::size_t>(i)] = (mv[static_cast<std::size_t>(i)] + gv[static_cast<std::size_t>(i)]) % p;
          const auto id = encode(mv);
          if (!span[id]) {
            span[id] = 1;
            members.push_back(id);
          }
        }
      }
    }
    if (members.size() == target && std::find(seen.begin(), seen.end(), span) == seen.end()) seen.push_back(span);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == size) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return seen.size();
}

}  // namespace btlab::support

#pragma once

#include <cstdint>
#include <vector>

#include "btlab/graph.hpp"
#include "btlab/lattice.hpp"

namespace btlab {

/// Radius-R ball of the building X_d(K), R being the ring's precision.
/// Vertex i is modules[i]; vertex 0 is the origin (O_R)^d.
struct Ball {
  ResidueRing ring;
  int d = 0;
  std::vector<SubmoduleRep> modules;
  LabeledGraph graph;
};

/// Edges join U and V whenever U*pi is inside V and V is inside U (or the
/// reverse). dist is the BFS distance from the origin; for commutative rings
/// it is checked against the largest invariant factor and tau is
/// (-sum n_i) mod d. Skew rings leave tau unset.
Ball build_ball(const ResidueRing& ring, int d, const Budget& budget = {});

/// (-sum of invariant factors) mod d. Commutative rings only.
int type_label(const SubmoduleRep& module);
/// Largest invariant factor. Commutative rings only.
int distance_origin(const SubmoduleRep& module);

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q);

struct DegreeFormula {
  std::uint64_t subspaces = 0;  // sum_{k=1}^{d-1} [d choose k]_q
  std::uint64_t product = 0;    // prod_{i=1}^{d} (q^i - 1) / (q - 1)
};

/// Vertex degree of X_d over a residue field of size q, together with the
/// product formula it is sometimes quoted as (the two differ for d >= 3).
DegreeFormula degree_closed_form(std::uint64_t q, int d);

/// Induced sub-ball of vertices with dist <= radius.
LabeledGraph truncate_ball(const LabeledGraph& ball, int radius);

}  // namespace btlab

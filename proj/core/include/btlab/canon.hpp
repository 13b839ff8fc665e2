#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btlab/error.hpp"
#include "btlab/graph.hpp"

namespace btlab {

struct CanonOptions {
  bool use_colors = false;    // respect tau
  bool use_distance = false;  // respect dist (the origin-fixing variant for balls)
};

struct CanonicalCertificate {
  std::string encoding;  // hex of the canonically relabelled graph
  std::string digest;    // SHA-256 of encoding
  std::vector<int> labeling;            // vertex -> canonical position
  std::vector<std::vector<int>> orbits;  // automorphism orbits, sorted
  std::size_t search_nodes = 0;

  friend bool operator==(const CanonicalCertificate& a, const CanonicalCertificate& b) {
    return a.encoding == b.encoding;
  }
};

/// Canonical labelling by colour refinement with individualization on the
/// first smallest non-singleton cell, invariant pruning and automorphism
/// (orbit) pruning. Throws InvalidInput for disconnected graphs and
/// BudgetExceeded past budget.max_search_nodes search nodes.
CanonicalCertificate canonical_form(const LabeledGraph& g, const CanonOptions& options = {}, const Budget& budget = {});

struct IsoResult {
  std::optional<std::vector<int>> mapping;  // g-vertex -> h-vertex
  std::string invariant;                    // first differing invariant otherwise
  std::string detail;
  bool isomorphic() const { return mapping.has_value(); }
};

IsoResult are_isomorphic(const LabeledGraph& g, const LabeledGraph& h, const CanonOptions& options = {},
                         const Budget& budget = {});

/// Edge preservation in both directions (and label preservation per options).
bool verify_isomorphism(const LabeledGraph& g, const LabeledGraph& h, const std::vector<int>& mapping,
                        const CanonOptions& options = {});

}  // namespace btlab

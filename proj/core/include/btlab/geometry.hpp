#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "btlab/graph.hpp"

namespace btlab {

/// Coxeter diagram over I = {0, ..., n-1}: M(i,i) = 1, M(i,j) = M(j,i) >= 2
/// or infinity.
class CoxeterDiagram {
 public:
  static constexpr int kInfinity = 0;

  /// Row-major n x n matrix; kInfinity marks infinite entries. Throws InvalidInput.
  static CoxeterDiagram from_matrix(int n, std::vector<int> entries);

  int rank() const { return n_; }
  int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }
  bool is_infinite(int i, int j) const { return (*this)(i, j) == kInfinity; }
  std::string to_string() const;

  friend bool operator==(const CoxeterDiagram&, const CoxeterDiagram&) = default;

 private:
  int n_ = 0;
  std::vector<int> m_;
};

/// Affine diagram A~_{d-1} over Z/dZ: 3 between i and i +- 1, 2 otherwise. d >= 3.
CoxeterDiagram atilde_diagram(int d);
/// Rank-2 diagram with M(0,1) = m.
CoxeterDiagram polygon_diagram(int m);
/// "atilde:d" or "polygon:m".
CoxeterDiagram parse_diagram(std::string_view text);

/// Every permutation s of I with M(i,j) = M(s(i),s(j)). Rank <= 8.
std::vector<std::vector<int>> diagram_symmetries(const CoxeterDiagram& m);

struct MgonCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Connected, bipartite, diameter m, girth 2m, minimum degree >= 2.
MgonCheck is_generalized_mgon(const LabeledGraph& g, int m);

/// Induced colored graph on the common neighbours of `flag` (the whole graph
/// for the empty flag). Throws InvalidInput unless flag is a clique of g.
/// `vertex_map`, when given, receives the original ids.
LabeledGraph residue_of_flag(const LabeledGraph& geo, std::span<const int> flag, std::vector<int>* vertex_map = nullptr);

struct GeometryViolation {
  std::vector<int> flag;
  std::vector<int> type;
  std::string condition;  // "coloring", "nonempty", "connected", "polygon"
  std::string detail;
};

struct GeometryReport {
  std::size_t flags_checked = 0;
  std::vector<GeometryViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks, for every flag whose vertices all lie in scope (the empty flag
/// included), that its residue is nonempty when |I\J| >= 1, connected when
/// |I\J| >= 2 and a generalized M(i,j)-gon when I\J = {i,j}. Violations are
/// listed in lexicographic flag order. geo.tau must be set.
GeometryReport verify_geometry(const LabeledGraph& geo, const CoxeterDiagram& m, const std::vector<bool>& scope);

/// Vertices with dist <= radius - margin (all vertices when dist is absent).
std::vector<bool> interior_scope(const LabeledGraph& ball, int radius, int margin = 2);
std::vector<bool> full_scope(const LabeledGraph& g);

}  // namespace btlab

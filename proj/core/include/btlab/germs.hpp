#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "btlab/error.hpp"
#include "btlab/geometry.hpp"
#include "btlab/graph.hpp"

namespace btlab {

/// A coloring of the closed neighbourhood V(x) = {x} + N(x) satisfying the
/// geometry conditions for every flag of V(x) through x.
struct Germ {
  int center = -1;
  std::vector<int> vertices;  // V(center), sorted
  std::vector<int> colors;    // colors[i] is the color of vertices[i]

  /// Color of v, or -1 if v is outside V(center).
  int color_of(int v) const;
  friend bool operator==(const Germ&, const Germ&) = default;
  friend auto operator<=>(const Germ& a, const Germ& b) { return a.colors <=> b.colors; }
};

/// Germ with every color c replaced by sigma[c].
Germ apply_symmetry(const Germ& germ, const std::vector<int>& sigma);

struct GermSet {
  std::vector<Germ> germs;  // lexicographic in (vertex order, color order)
  /// True when the germs form one orbit under the diagram symmetries (vacuous when empty).
  bool single_orbit = true;
  /// Number of symmetries fixing the first germ (1 when empty).
  std::size_t stabilizer = 1;
};

enum class TransportStatus { Ok, NoExtension, NotUnique };

class TransportError : public Error {
 public:
  TransportError(TransportStatus status, int from, int to, const std::string& what)
      : Error(what), status_(status), from_(from), to_(to) {}
  TransportStatus status() const { return status_; }
  int from() const { return from_; }
  int to() const { return to_; }

 private:
  TransportStatus status_;
  int from_, to_;
};

/// Germ enumeration and transport on a fixed graph and diagram. Per-vertex
/// local structure is computed on first use and cached, so one labeler
/// should be reused across calls; it is not safe for concurrent use.
class GermLabeler {
 public:
  GermLabeler(const LabeledGraph& g, CoxeterDiagram m, const Budget& budget = {});
  ~GermLabeler();
  GermLabeler(const GermLabeler&) = delete;
  GermLabeler& operator=(const GermLabeler&) = delete;

  const LabeledGraph& graph() const { return g_; }
  const CoxeterDiagram& diagram() const { return m_; }
  const std::vector<std::vector<int>>& symmetries() const { return symmetries_; }

  GermSet germs_at(int x);
  /// The unique germ at y agreeing with `germ` on V(x) and V(y), x = germ.center.
  /// Throws TransportError (NoExtension / NotUnique) and InvalidInput when x, y are not adjacent.
  Germ transport(const Germ& germ, int y);

 private:
  struct Local;
  const Local& local(int x);
  // Up to `limit` germs at x extending the partial assignment (-1 = free).
  std::vector<Germ> search(int x, const std::vector<int>& fixed, std::size_t limit);

  const LabeledGraph& g_;
  CoxeterDiagram m_;
  Budget budget_;
  std::vector<std::vector<int>> symmetries_;
  std::vector<std::unique_ptr<Local>> cache_;
};

GermSet germs_at(const LabeledGraph& g, int x, const CoxeterDiagram& m, const Budget& budget = {});
Germ transport(const LabeledGraph& g, const CoxeterDiagram& m, const Germ& germ, int y, const Budget& budget = {});

enum class PropagationStatus { Labelled, Obstruction, TransportFailure };

struct PropagationResult {
  PropagationStatus status = PropagationStatus::Labelled;
  std::vector<int> tau;     // -1 outside the domain; set when Labelled
  std::vector<int> cycle;   // closed walk u0 .. uk with uk adjacent to u0, when Obstruction
  TransportStatus failure = TransportStatus::Ok;
  std::pair<int, int> failing_edge{-1, -1};
  std::string detail;
};

/// Transports `seed` (a germ at its center) along a BFS spanning tree of the
/// domain, then checks every non-tree edge. Domain defaults to all vertices.
PropagationResult propagate(GermLabeler& labeler, const Germ& seed, const std::vector<bool>* domain = nullptr);

struct CycleClassReport {
  int length = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<int> example;  // first failing closed path
};

struct CycleCertificate {
  int k = 0;
  std::vector<CycleClassReport> classes;  // lengths 2 (round trips) .. k
  bool passed() const;
};

/// Holonomy of every closed path of length <= k inside the domain: round
/// trips x -> y -> x and simple cycles of length 3..k, each started from
/// every germ at its first vertex. Independent of any spanning tree.
CycleCertificate short_cycle_certificate(GermLabeler& labeler, int k, const std::vector<bool>* domain = nullptr);

}  // namespace btlab

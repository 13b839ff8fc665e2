#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "btlab/residue_ring.hpp"

namespace btlab {

using Vec = std::vector<Elem>;

/// Finitely generated right O_R-submodule of (O_R)^d in canonical echelon form.
///
/// Rows have strictly increasing pivot columns, each pivot is exactly pi^s
/// (s < R), and an entry above a pivot pi^s is reduced to the transversal of
/// O_R / pi^s O_R (its digits at positions >= s are zero). The form is a
/// Howell form: for every column c, the module elements vanishing on columns
/// < c are spanned by the rows whose pivot is >= c. Two modules are equal iff
/// their row matrices are equal.
class SubmoduleRep {
 public:
  const ResidueRing& ring() const { return ring_; }
  int rank() const { return d_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivot_columns() const { return pivot_col_; }
  const std::vector<int>& pivot_valuations() const { return pivot_val_; }

  /// log_q of the number of elements.
  int log_size() const;
  /// True iff some entry is a unit, i.e. the module is not inside pi (O_R)^d.
  bool is_vertex_module() const;
  /// Rows separated by ';', entries by ','; entries are ring digit strings.
  std::string format() const;

  friend bool operator==(const SubmoduleRep& a, const SubmoduleRep& b) {
    return a.ring_.same_ring(b.ring_) && a.d_ == b.d_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const SubmoduleRep& a, const SubmoduleRep& b) { return a.rows_ < b.rows_; }

 private:
  friend SubmoduleRep canonical_span(const ResidueRing& ring, int d, std::span<const Vec> generators);
  SubmoduleRep(ResidueRing ring, int d) : ring_(std::move(ring)), d_(d) {}

  ResidueRing ring_;
  int d_;
  std::vector<Vec> rows_;
  std::vector<int> pivot_col_;
  std::vector<int> pivot_val_;
};

/// Canonical form of the right submodule spanned by `generators`.
/// Throws InvalidInput if a generator does not have length d.
SubmoduleRep canonical_span(const ResidueRing& ring, int d, std::span<const Vec> generators);
SubmoduleRep full_module(const ResidueRing& ring, int d);
SubmoduleRep parse_module(const ResidueRing& ring, int d, std::string_view text);

/// v minus its reduction against a's rows; zero iff v lies in a.
Vec reduce_vector(const SubmoduleRep& a, Vec v);
bool contains_vector(const SubmoduleRep& a, const Vec& v);
/// True iff b is a submodule of a. Throws Mismatch on differing ring or rank.
bool contains(const SubmoduleRep& a, const SubmoduleRep& b);
/// The homothety image a * pi (rows multiplied by pi on the right).
SubmoduleRep scale_by_uniformizer(const SubmoduleRep& a);

/// Every submodule of (O_R)^d not contained in pi (O_R)^d, canonical and
/// ordered by (sum of diagonal valuations, diagonal valuations, rows).
/// Throws BudgetExceeded past budget.max_candidates candidates or
/// budget.max_vertices modules.
std::vector<SubmoduleRep> enumerate_vertex_modules(const ResidueRing& ring, int d, const Budget& budget = {});

/// Sorted exponents (n_1, ..., n_d) of a Smith decomposition, padded with R.
/// Commutative rings only; throws InvalidInput for skew rings.
std::vector<int> invariant_factors(const SubmoduleRep& a);

}  // namespace btlab

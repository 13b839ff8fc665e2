#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "btlab/error.hpp"
#include "btlab/field.hpp"

namespace btlab {

enum class RingKind { EqualChar, Unramified, Eisenstein, Skew };

std::string_view to_string(RingKind kind);

/// Element of a residue ring, identified by its canonical digit vector
/// (d_0, ..., d_{R-1}) through id = sum_v d_v q^v. Digit d_v is the residue
/// field element carried by the unique monomial of valuation v.
using Elem = std::uint32_t;

/// The finite chain ring O_R = O / pi^R O of a local field.
///
/// Elements are written sum_{i<delta} x^i a_i with a_i in the ring of the
/// maximal unramified subfield K_1, x^delta = pi_L and a x = x f^r(a); the
/// a_i are in turn sum_{j<e} Y^j c_ij over the Galois ring, with Y the center
/// uniformizer reduced by the Eisenstein polynomial (e = infinity: power
/// series in Y over the residue field). c_ij is kept modulo the power of p
/// that makes every valuation in [0, R) appear exactly once.
///
/// Construction tabulates addition and multiplication, so the ring must fit
/// budget.max_ring_size. Handles are cheap to copy and immutable.
class ResidueRing {
 public:
  /// Throws InvalidInput if the descriptor is invalid, BudgetExceeded if
  /// q^R exceeds budget.max_ring_size.
  static ResidueRing build(const FieldDescriptor& desc, int precision, const Budget& budget = {});

  const FieldDescriptor& descriptor() const;
  int precision() const;              // R, the nilpotency index of pi
  std::uint64_t residue_size() const;  // q = p^(f*delta)
  std::size_t size() const;            // q^R
  RingKind kind() const;
  bool is_commutative() const;

  Elem zero() const { return 0; }
  Elem one() const;
  Elem uniformizer() const;
  Elem uniformizer_power(int k) const;  // 0 for k >= R

  Elem add(Elem a, Elem b) const { return add_[index(a, b)]; }
  Elem mul(Elem a, Elem b) const { return mul_[index(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  /// Largest k with a in pi^k O_R; R for zero.
  int valuation(Elem a) const { return val_[a]; }
  bool is_unit(Elem a) const { return val_[a] == 0; }
  Elem inverse(Elem a) const;  // throws InvalidInput for non-units

  /// Canonical representative of a + pi^s O_R (digits at positions >= s cleared).
  Elem truncate(Elem a, int s) const;
  /// Smallest-id t with pi^s * t = a. Requires valuation(a) >= s.
  Elem divide_by_uniformizer_power(int s, Elem a) const;

  std::vector<int> digits(Elem a) const;
  Elem from_digits(std::span<const int> digits) const;
  Elem from_integer(std::int64_t z) const;
  /// Little-endian digit string (see encode_digits).
  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

  /// pi_L, the uniformizer of the center (equals uniformizer() when delta = 1).
  Elem center_uniformizer() const;
  /// Elements with no x-component: the image of the unramified coefficient ring.
  std::vector<Elem> coefficient_elements() const;
  /// f^r applied to a coefficient element (the twist in a x = x f^r(a)).
  Elem twist(Elem a) const;
  /// Lift of the absolute Frobenius applied to every Galois-ring coefficient.
  Elem coefficient_frobenius(Elem a, int power = 1) const;

  bool same_ring(const ResidueRing& other) const { return impl_ == other.impl_; }

 private:
  struct Impl;
  explicit ResidueRing(std::shared_ptr<const Impl> impl);
  std::size_t index(Elem a, Elem b) const { return static_cast<std::size_t>(a) * n_ + b; }

  std::shared_ptr<const Impl> impl_;
  // Hot tables are mirrored here so arithmetic skips the pimpl indirection.
  std::size_t n_ = 0;
  const Elem* add_ = nullptr;
  const Elem* mul_ = nullptr;
  const Elem* neg_ = nullptr;
  const int* val_ = nullptr;
};

/// An additive and multiplicative bijection of a ring onto itself.
struct RingAutomorphism {
  std::vector<Elem> image;

  Elem operator()(Elem a) const { return image[a]; }
  RingAutomorphism then(const RingAutomorphism& next) const;
  bool is_identity() const;
  /// Smallest k >= 1 with this^k = identity.
  int order() const;
};

/// Hensel lift of the Frobenius z -> z^p of the residue field to an
/// unramified ring GR(p^R, f). Throws InvalidInput for other ring kinds.
RingAutomorphism frobenius_lift(const ResidueRing& ring);

/// True iff `map` (indexed by elements of a) is a bijection onto b
/// preserving addition, multiplication and 1 (checked on all pairs).
bool verify_ring_isomorphism(const ResidueRing& a, const ResidueRing& b, std::span<const Elem> map);

struct RingIsoResult {
  std::optional<std::vector<Elem>> witness;  // a-element -> b-element
  std::string invariant;  // distinguishing invariant when no witness exists
  std::string detail;

  bool isomorphic() const { return witness.has_value(); }
};

/// Brute-force ring isomorphism search with invariant pruning. Any witness is
/// verified exhaustively before it is returned. Throws BudgetExceeded when
/// the search exceeds budget.max_search_nodes.
RingIsoResult rings_isomorphic(const ResidueRing& a, const ResidueRing& b, const Budget& budget = {});

struct KrasnerWitness {
  ResidueRing source;  // O_e of the field
  ResidueRing target;  // F_q[t]/(t^e)
  std::vector<Elem> map;
};

/// The isomorphism O_e = W(F_q)[X]/(X^e, P) -> F_q[t]/(t^e) sending X to t
/// and coefficients to their residues. Verified on all pairs before being
/// returned; a failed check raises VerificationFailure.
KrasnerWitness krasner_witness(const FieldDescriptor& desc, const Budget& budget = {});

}  // namespace btlab

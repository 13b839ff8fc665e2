#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "btlab/error.hpp"

namespace btlab {

/// Absolute ramification index of the center: a positive integer or infinity
/// (positive characteristic). Infinity is its own state, not a magic number.
class RamificationIndex {
 public:
  static constexpr RamificationIndex infinite() { return RamificationIndex(0, true); }
  static constexpr RamificationIndex finite(int e) { return RamificationIndex(e, false); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  int value() const;  // throws InvalidInput when infinite

  friend constexpr bool operator==(RamificationIndex a, RamificationIndex b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  std::string to_string() const;

 private:
  constexpr RamificationIndex(int v, bool inf) : value_(v), infinite_(inf) {}
  int value_;
  bool infinite_;
};

/// Little-endian digits of an element of the unramified ring W(F_{p^f}).
/// Each digit is a residue-field element encoded as sum_l c_l p^l where
/// c_l is its coordinate on the l-th power of the residue field generator.
struct DigitVector {
  std::vector<int> digits;
  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

/// Coefficient of an Eisenstein polynomial: either a rational integer
/// (embedded in W(F_{p^f})) or an explicit digit vector.
using EisensteinCoefficient = std::variant<std::int64_t, DigitVector>;

/// Classification datum (p, f, e, delta, r) of a non-archimedean local field,
/// optionally with the Eisenstein polynomial X^e + a_{e-1}X^{e-1} + ... + a_0
/// presenting its center over the unramified field.
///
/// delta is the residual degree of the field over its center (named delta so
/// that d stays free for the building rank); r is its Hasse invariant, stored
/// reduced modulo delta. When eisenstein is absent and e is finite the
/// polynomial X^e - p is used.
struct FieldDescriptor {
  int p = 2;
  int f = 1;
  RamificationIndex e = RamificationIndex::finite(1);
  int delta = 1;
  int r = 0;
  std::optional<std::vector<EisensteinCoefficient>> eisenstein;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

  /// Q_{p^f}[p^{1/e}] (with Hasse data delta, r).
  static FieldDescriptor mixed(int p, int f, int e, int delta = 1, int r = 0);
  /// F_{p^f}((t)) (with Hasse data delta, r).
  static FieldDescriptor equal_characteristic(int p, int f, int delta = 1, int r = 0);

  bool is_commutative() const { return delta == 1; }
  /// p^(f*delta), the size of the residue field O/piO.
  std::uint64_t residue_field_size() const;
};

struct Violation {
  std::string invariant;  // short machine-readable key
  std::string message;
};

bool is_prime(std::int64_t n);

/// p-adic valuation of an Eisenstein coefficient; nullopt for zero.
std::optional<int> coefficient_valuation(const EisensteinCoefficient& c, int p);

/// Lists every violated descriptor invariant; empty means valid.
std::vector<Violation> validate(const FieldDescriptor& desc);

/// Parses the JSON descriptor document. Throws InvalidInput on malformed
/// documents and on invariant violations (all violations are listed).
FieldDescriptor parse_descriptor(std::string_view text);
FieldDescriptor descriptor_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const FieldDescriptor& desc);
/// Canonical compact serialization; identical descriptors give identical strings.
std::string normal_form(const FieldDescriptor& desc);
std::string describe(const FieldDescriptor& desc);

/// Digit-string codec shared by Eisenstein coefficients and ring elements:
/// one base-36 character per digit when the digit alphabet has at most 36
/// symbols, otherwise '.'-separated decimal digits. Little-endian.
std::string encode_digits(const std::vector<int>& digits, std::uint64_t alphabet);
std::vector<int> decode_digits(std::string_view text, std::uint64_t alphabet);

/// Field of type (p, f, infinity, delta, r): the positive-characteristic
/// limit of the fields of type (p, f, e, delta, r) as e grows.
FieldDescriptor positive_char_limit(const FieldDescriptor& desc);

/// Largest R <= r_max such that the residue rings O_R of a and b are
/// isomorphic (0 when the residue fields differ). The search stops at the
/// first non-isomorphic precision; isomorphism at R implies isomorphism at
/// every smaller precision. Throws BudgetExceeded when a ring of the ladder
/// exceeds budget.max_ring_size elements.
int closeness(const FieldDescriptor& a, const FieldDescriptor& b, int r_max,
              const Budget& budget = {});

}  // namespace btlab

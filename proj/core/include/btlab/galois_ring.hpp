#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace btlab {

/// Monic polynomial over F_p, little-endian coefficients in [0, p), leading 1 included.
using PrimePolynomial = std::vector<int>;

bool is_irreducible_mod_p(const PrimePolynomial& poly, int p);

/// Modulus defining F_{p^degree}: an embedded table of Conway polynomials for
/// small (p, degree), otherwise the least irreducible monic polynomial when
/// coefficient vectors are ordered as base-p numbers (little-endian).
PrimePolynomial residue_field_modulus(int p, int degree);

/// Galois ring GR(p^precision, degree) = (Z/p^precision)[X]/(h) where h is
/// residue_field_modulus(p, degree) with coefficients read in {0..p-1}.
/// precision = 1 gives the finite field F_{p^degree}.
class GaloisRing {
 public:
  using Element = std::vector<std::int64_t>;  // `degree` coefficients in [0, p^precision)

  GaloisRing(int p, int degree, int precision);

  int prime() const { return p_; }
  int degree() const { return n_; }
  int precision() const { return m_; }
  std::int64_t modulus() const { return mod_; }
  const PrimePolynomial& defining_polynomial() const { return h_; }

  Element zero() const { return Element(static_cast<std::size_t>(n_), 0); }
  Element one() const { return from_integer(1); }
  Element generator() const;  // the class of X
  Element from_integer(std::int64_t z) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element scale(const Element& a, std::int64_t z) const;
  Element pow(Element a, std::uint64_t k) const;

  bool is_zero(const Element& a) const;
  bool is_unit(const Element& a) const;
  Element inverse(const Element& a) const;  // throws VerificationFailure on non-units

  /// Reduction modulo p^k (k <= precision); k = 0 gives zero.
  Element truncate(const Element& a, int k) const;
  int p_valuation(const Element& a) const;  // precision for zero

  /// k-th p-adic digit of a in the polynomial-basis transversal, encoded as
  /// sum_l c_l p^l with c_l in [0, p).
  int digit(const Element& a, int k) const;
  /// Element with the given digit (encoded as above) at p-adic position k.
  Element digit_element(int encoded, int k) const;

  /// Evaluates sum_i poly[i] x^i.
  Element evaluate(std::span<const Element> poly, const Element& x) const;
  /// Newton iteration from approx to the unique root congruent to approx
  /// modulo p. poly must be separable at approx (derivative a unit).
  Element hensel_root(std::span<const Element> poly, Element approx) const;

  /// Lift of the absolute Frobenius z -> z^p, applied `power` times.
  Element frobenius(const Element& a, int power = 1) const;
  /// Image of X under the Frobenius lift.
  const Element& frobenius_generator_image() const { return frob_images_.at(1 % n_); }

 private:
  std::int64_t norm(std::int64_t v) const {
    v %= mod_;
    return v < 0 ? v + mod_ : v;
  }

  int p_;
  int n_;
  int m_;
  std::int64_t mod_;
  PrimePolynomial h_;
  // frob_powers_[k][l] = (sigma^k(X))^l
  std::vector<Element> frob_images_;
  std::vector<std::vector<Element>> frob_powers_;
};

}  // namespace btlab

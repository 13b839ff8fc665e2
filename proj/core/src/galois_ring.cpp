#include "btlab/galois_ring.hpp"

#include <map>
#include <utility>

#include "btlab/error.hpp"

namespace btlab {

namespace {

// Conway polynomials, little-endian, leading coefficient included.
const std::map<std::pair<int, int>, PrimePolynomial>& conway_table() {
  static const std::map<std::pair<int, int>, PrimePolynomial> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{11, 1}, {9, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 1}, {11, 1}},
      {{13, 2}, {2, 12, 1}},
  };
  return table;
}

// Remainder of a modulo monic b over F_p (both little-endian).
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int c = a.back() % p;
    if (c != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    a.pop_back();
  }
  return a;
}

std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

bool is_irreducible_mod_p(const PrimePolynomial& poly, int p) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const int n = static_cast<int>(poly.size()) - 1;
  for (int k = 1; 2 * k <= n; ++k) {
    const std::int64_t count = ipow64(p, k);
    for (std::int64_t code = 0; code < count; ++code) {
      std::vector<int> divisor(static_cast<std::size_t>(k) + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < k; ++i) {
        divisor[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      divisor.back() = 1;
      const auto rem = poly_mod(poly, divisor, p);
      bool zero = true;
      for (int v : rem) zero = zero && v == 0;
      if (zero) return false;
    }
  }
  return true;
}

PrimePolynomial residue_field_modulus(int p, int degree) {
  if (degree < 1) throw InvalidInput("residue field degree must be >= 1");
  const auto& table = conway_table();
  if (auto it = table.find({p, degree}); it != table.end()) return it->second;
  const std::int64_t count = ipow64(p, degree);
  for (std::int64_t code = 0; code < count; ++code) {
    PrimePolynomial poly(static_cast<std::size_t>(degree) + 1, 0);
    std::int64_t c = code;
    for (int i = 0; i < degree; ++i) {
      poly[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
      c /= p;
    }
    poly.back() = 1;
    if (is_irreducible_mod_p(poly, p)) return poly;
  }
  throw VerificationFailure("no irreducible polynomial found");
}

GaloisRing::GaloisRing(int p, int degree, int precision)
    : p_(p), n_(degree), m_(precision), mod_(1), h_(residue_field_modulus(p, degree)) {
  if (precision < 1) throw InvalidInput("Galois ring precision must be >= 1");
  for (int i = 0; i < m_; ++i) {
    mod_ *= p_;
    if (mod_ > (std::int64_t{1} << 31)) throw BudgetExceeded("Galois ring modulus p^precision exceeds 2^31");
  }

  // Frobenius lift: sigma(X) is the root of h congruent to X^p.
  std::vector<Element> hpoly;
  for (int c : h_) hpoly.push_back(from_integer(c));
  frob_images_.resize(static_cast<std::size_t>(n_));
  frob_powers_.resize(static_cast<std::size_t>(n_));
  frob_images_[0] = generator();
  if (n_ > 1) frob_images_[1] = hensel_root(hpoly, pow(generator(), static_cast<std::uint64_t>(p_)));
  auto powers_of = [&](const Element& x) {
    std::vector<Element> pw(static_cast<std::size_t>(n_));
    pw[0] = one();
    for (int l = 1; l < n_; ++l) pw[static_cast<std::size_t>(l)] = mul(pw[static_cast<std::size_t>(l) - 1], x);
    return pw;
  };
  frob_powers_[0] = powers_of(frob_images_[0]);
  if (n_ > 1) frob_powers_[1] = powers_of(frob_images_[1]);
  for (int k = 2; k < n_; ++k) {
    frob_images_[static_cast<std::size_t>(k)] = frobenius(frob_images_[static_cast<std::size_t>(k) - 1], 1);
    frob_powers_[static_cast<std::size_t>(k)] = powers_of(frob_images_[static_cast<std::size_t>(k)]);
  }
}

GaloisRing::Element GaloisRing::generator() const {
  if (n_ == 1) return from_integer(-h_[0]);
  Element x = zero();
  x[1] = 1 % mod_;
  return x;
}

GaloisRing::Element GaloisRing::from_integer(std::int64_t z) const {
  Element out = zero();
  out[0] = norm(z);
  return out;
}

GaloisRing::Element GaloisRing::add(const Element& a, const Element& b) const {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = norm(a[i] + b[i]);
  return out;
}

GaloisRing::Element GaloisRing::sub(const Element& a, const Element& b) const {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = norm(a[i] - b[i]);
  return out;
}

GaloisRing::Element GaloisRing::neg(const Element& a) const {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = norm(-a[i]);
  return out;
}

GaloisRing::Element GaloisRing::mul(const Element& a, const Element& b) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<std::int64_t> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = norm(prod[i + j] + a[i] * b[j]);
  }
  for (std::size_t t = prod.size() - 1; t >= n; --t) {
    const std::int64_t c = prod[t];
    if (c == 0) continue;
    prod[t] = 0;
    for (std::size_t l = 0; l < n; ++l) prod[t - n + l] = norm(prod[t - n + l] - c * h_[l]);
  }
  prod.resize(n);
  return prod;
}

GaloisRing::Element GaloisRing::scale(const Element& a, std::int64_t z) const {
  Element out(a.size());
  const std::int64_t zz = norm(z);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = norm(a[i] * zz);
  return out;
}

GaloisRing::Element GaloisRing::pow(Element a, std::uint64_t k) const {
  Element out = one();
  while (k > 0) {
    if (k & 1U) out = mul(out, a);
    a = mul(a, a);
    k >>= 1U;
  }
  return out;
}

bool GaloisRing::is_zero(const Element& a) const {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

bool GaloisRing::is_unit(const Element& a) const {
  for (auto c : a)
    if (c % p_ != 0) return true;
  return false;
}

GaloisRing::Element GaloisRing::inverse(const Element& a) const {
  if (!is_unit(a)) throw VerificationFailure("inverse of a non-unit in a Galois ring");
  // a^(p^n - 2) inverts a modulo p; Newton doubles the precision each step.
  Element y = pow(a, static_cast<std::uint64_t>(ipow64(p_, n_) - 2));
  const Element two = from_integer(2);
  for (int it = 0; it < 64; ++it) {
    const Element ay = mul(a, y);
    if (ay == one()) return y;
    y = mul(y, sub(two, ay));
  }
  throw VerificationFailure("Newton inversion did not converge");
}

GaloisRing::Element GaloisRing::truncate(const Element& a, int k) const {
  if (k >= m_) return a;
  const std::int64_t pk = ipow64(p_, k);
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] % pk;
  return out;
}

int GaloisRing::p_valuation(const Element& a) const {
  int best = m_;
  for (auto c : a) {
    if (c == 0) continue;
    int v = 0;
    while (c % p_ == 0) {
      c /= p_;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

int GaloisRing::digit(const Element& a, int k) const {
  const std::int64_t pk = ipow64(p_, k);
  int enc = 0;
  int weight = 1;
  for (int l = 0; l < n_; ++l) {
    enc += static_cast<int>((a[static_cast<std::size_t>(l)] / pk) % p_) * weight;
    weight *= p_;
  }
  return enc;
}

GaloisRing::Element GaloisRing::digit_element(int encoded, int k) const {
  const std::int64_t pk = ipow64(p_, k);
  Element out = zero();
  for (int l = 0; l < n_; ++l) {
    out[static_cast<std::size_t>(l)] = norm((encoded % p_) * pk);
    encoded /= p_;
  }
  return out;
}

GaloisRing::Element GaloisRing::evaluate(std::span<const Element> poly, const Element& x) const {
  Element acc = zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

GaloisRing::Element GaloisRing::hensel_root(std::span<const Element> poly, Element approx) const {
  std::vector<Element> deriv;
  for (std::size_t i = 1; i < poly.size(); ++i) deriv.push_back(scale(poly[i], static_cast<std::int64_t>(i)));
  for (int it = 0; it < 2 * m_ + 8; ++it) {
    const Element value = evaluate(poly, approx);
    if (is_zero(value)) return approx;
    const Element slope = evaluate(deriv, approx);
    if (!is_unit(slope)) throw VerificationFailure("Hensel lifting at a non-simple root");
    approx = sub(approx, mul(value, inverse(slope)));
  }
  throw VerificationFailure("Hensel lifting did not converge");
}

GaloisRing::Element GaloisRing::frobenius(const Element& a, int power) const {
  const int k = ((power % n_) + n_) % n_;
  if (k == 0) return a;
  const auto& pw = frob_powers_[static_cast<std::size_t>(k)];
  Element out = zero();
  for (int l = 0; l < n_; ++l) {
    const auto c = a[static_cast<std::size_t>(l)];
    if (c != 0) out = add(out, scale(pw[static_cast<std::size_t>(l)], c));
  }
  return out;
}

}  // namespace btlab

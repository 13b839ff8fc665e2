#include "btlab/residue_ring.hpp"

#include <algorithm>
#include <numeric>

#include "btlab/galois_ring.hpp"

namespace btlab {

namespace {

std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

std::string_view to_string(RingKind kind) {
  switch (kind) {
    case RingKind::EqualChar: return "EQUAL_CHAR";
    case RingKind::Unramified: return "UNRAMIFIED";
    case RingKind::Eisenstein: return "EISENSTEIN";
    case RingKind::Skew: return "SKEW";
  }
  return "?";
}

struct ResidueRing::Impl {
  FieldDescriptor desc;
  RingKind kind = RingKind::Unramified;
  int R = 0;
  int p = 0;
  int n = 0;      // f * delta, degree of the coefficient Galois ring
  int delta = 1;
  int e = 0;      // 0 when infinite
  int J = 0;      // Y-degree bound of a coefficient block
  int twist_power = 0;  // sigma-power applied when a coefficient crosses x
  std::uint64_t q = 0;
  std::size_t N = 0;
  std::vector<int> M;  // p-adic precision of slot (i, j), index i*J + j
  GaloisRing gr;
  std::vector<GaloisRing::Element> eis;  // a_0..a_{e-1} embedded in gr

  // Position v -> (slot, p-adic digit index).
  std::vector<int> pos_slot;
  std::vector<int> pos_k;

  std::vector<Elem> add, mul, neg;
  std::vector<int> val;
  std::vector<Elem> inv;  // 0 for non-units
  std::vector<Elem> upow;
  std::vector<std::vector<Elem>> div;  // div[s][a]
  Elem one_id = 0, pi_id = 0, center_pi_id = 0;

  Impl(const FieldDescriptor& d, int precision, int mmax) : desc(d), R(precision), gr(d.p, d.f * d.delta, mmax) {}

  using Block = std::vector<GaloisRing::Element>;  // J coefficients of Y^j
  using Structured = std::vector<Block>;           // delta blocks of x^i

  std::vector<int> digits_of(Elem a) const {
    std::vector<int> out(static_cast<std::size_t>(R));
    for (int v = 0; v < R; ++v) {
      out[static_cast<std::size_t>(v)] = static_cast<int>(a % q);
      a = static_cast<Elem>(a / q);
    }
    return out;
  }

  Structured zero_structured() const { return Structured(static_cast<std::size_t>(delta), Block(static_cast<std::size_t>(J), gr.zero())); }

  Structured to_structured(Elem a) const {
    Structured s = zero_structured();
    const auto dg = digits_of(a);
    for (int v = 0; v < R; ++v) {
      const int d = dg[static_cast<std::size_t>(v)];
      if (d == 0) continue;
      const int slot = pos_slot[static_cast<std::size_t>(v)];
      auto& c = s[static_cast<std::size_t>(slot / J)][static_cast<std::size_t>(slot % J)];
      c = gr.add(c, gr.digit_element(d, pos_k[static_cast<std::size_t>(v)]));
    }
    return s;
  }

  // Reads the digits of every valuation below R; higher terms are dropped.
  Elem from_structured(const Structured& s) const {
    std::uint64_t id = 0, weight = 1;
    for (int v = 0; v < R; ++v) {
      const int slot = pos_slot[static_cast<std::size_t>(v)];
      const auto& c = s[static_cast<std::size_t>(slot / J)][static_cast<std::size_t>(slot % J)];
      id += static_cast<std::uint64_t>(gr.digit(c, pos_k[static_cast<std::size_t>(v)])) * weight;
      weight *= q;
    }
    return static_cast<Elem>(id);
  }

  // Reduces a polynomial in Y to a block of J coefficients.
  Block reduce(Block poly) const {
    if (e > 0) {
      for (std::size_t t = poly.size(); t-- > static_cast<std::size_t>(e);) {
        const auto c = poly[t];
        if (gr.is_zero(c)) continue;
        for (int j = 0; j < e; ++j) {
          auto& target = poly[t - static_cast<std::size_t>(e) + static_cast<std::size_t>(j)];
          target = gr.sub(target, gr.mul(c, eis[static_cast<std::size_t>(j)]));
        }
      }
    }
    poly.resize(static_cast<std::size_t>(J), gr.zero());
    return poly;
  }

  Block block_mul(const Block& a, const Block& b) const {
    Block prod(2 * static_cast<std::size_t>(J) - 1, gr.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (gr.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = gr.add(prod[i + j], gr.mul(a[i], b[j]));
    }
    return reduce(std::move(prod));
  }

  Block block_times_y(const Block& a) const {
    Block shifted(a.size() + 1, gr.zero());
    std::copy(a.begin(), a.end(), shifted.begin() + 1);
    return reduce(std::move(shifted));
  }

  Block block_frobenius(const Block& a, int power) const {
    Block out = a;
    for (auto& c : out) c = gr.frobenius(c, power);
    return out;
  }

  // (x^i a)(x^j b) = x^(i+j) f^(r j)(a) b, with x^delta = Y central.
  Structured multiply(const Structured& a, const Structured& b) const {
    Structured out = zero_structured();
    for (int i = 0; i < delta; ++i) {
      for (int j = 0; j < delta; ++j) {
        const Block ta = block_frobenius(a[static_cast<std::size_t>(i)], twist_power * j);
        Block prod = block_mul(ta, b[static_cast<std::size_t>(j)]);
        int s = i + j;
        if (s >= delta) {
          s -= delta;
          prod = block_times_y(prod);
        }
        auto& dst = out[static_cast<std::size_t>(s)];
        for (int t = 0; t < J; ++t)
          dst[static_cast<std::size_t>(t)] = gr.add(dst[static_cast<std::size_t>(t)], prod[static_cast<std::size_t>(t)]);
      }
    }
    return out;
  }

  Elem monomial(int v, int d) const { return static_cast<Elem>(static_cast<std::uint64_t>(d) * ipow64(static_cast<std::int64_t>(q), v)); }
};

namespace {

// Root of the F_{p^f} modulus inside GR(p^M, f*delta), giving the embedding of
// the center's coefficient ring.
GaloisRing::Element center_generator(const GaloisRing& gr, int f) {
  if (f == gr.degree()) return gr.generator();
  const auto h = residue_field_modulus(gr.prime(), f);
  std::vector<GaloisRing::Element> poly;
  for (int c : h) poly.push_back(gr.from_integer(c));
  const auto count = ipow64(gr.prime(), gr.degree());
  for (std::int64_t code = 0; code < count; ++code) {
    const auto z = gr.digit_element(static_cast<int>(code), 0);
    if (!gr.is_unit(gr.evaluate(poly, z))) return gr.hensel_root(poly, z);
  }
  throw VerificationFailure("residue field of the center does not embed");
}

GaloisRing::Element embed_coefficient(const GaloisRing& gr, const EisensteinCoefficient& c, int f,
                                      std::optional<GaloisRing::Element>& rho) {
  if (const auto* z = std::get_if<std::int64_t>(&c)) return gr.from_integer(*z);
  const auto& digits = std::get<DigitVector>(c).digits;
  if (!rho) rho = center_generator(gr, f);
  GaloisRing::Element out = gr.zero();
  GaloisRing::Element pk = gr.one();
  for (int digit : digits) {
    GaloisRing::Element term = gr.zero();
    GaloisRing::Element rl = gr.one();
    for (int l = 0; l < f; ++l) {
      term = gr.add(term, gr.scale(rl, digit % gr.prime()));
      digit /= gr.prime();
      rl = gr.mul(rl, *rho);
    }
    out = gr.add(out, gr.mul(term, pk));
    pk = gr.scale(pk, gr.prime());
  }
  return out;
}

}  // namespace

ResidueRing::ResidueRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
  n_ = impl_->N;
  add_ = impl_->add.data();
  mul_ = impl_->mul.data();
  neg_ = impl_->neg.data();
  val_ = impl_->val.data();
}

ResidueRing ResidueRing::build(const FieldDescriptor& desc, int precision, const Budget& budget) {
  const auto violations = validate(desc);
  if (!violations.empty()) {
    std::string msg = "invalid descriptor:";
    for (const auto& v : violations) msg += " [" + v.invariant + "] " + v.message + ";";
    throw InvalidInput(msg);
  }
  if (precision < 1) throw InvalidInput("precision R must be >= 1");

  const std::uint64_t q = desc.residue_field_size();
  std::uint64_t N = 1;
  for (int i = 0; i < precision; ++i) {
    N *= q;
    if (N > budget.max_ring_size || N > (std::uint64_t{1} << 31))
      throw_budget("residue ring size q^R", static_cast<std::size_t>(std::min<std::uint64_t>(N, SIZE_MAX)), budget.max_ring_size);
  }

  const int delta = desc.delta;
  const int e = desc.e.is_infinite() ? 0 : desc.e.value();
  std::vector<int> m(static_cast<std::size_t>(delta));
  for (int i = 0; i < delta; ++i) m[static_cast<std::size_t>(i)] = ceil_div(precision - i, delta);
  const int J = e > 0 ? e : m[0];
  std::vector<int> M(static_cast<std::size_t>(delta * J), 0);
  for (int i = 0; i < delta; ++i)
    for (int j = 0; j < J; ++j) {
      const int rest = m[static_cast<std::size_t>(i)] - j;
      M[static_cast<std::size_t>(i * J + j)] = e > 0 ? ceil_div(rest, e) : (rest > 0 ? 1 : 0);
    }
  const int mmax = std::max(1, *std::max_element(M.begin(), M.end()));

  auto impl = std::make_shared<Impl>(desc, precision, mmax);
  Impl& r = *impl;
  r.p = desc.p;
  r.n = desc.f * delta;
  r.delta = delta;
  r.e = e;
  r.J = J;
  r.twist_power = desc.f * desc.r;
  r.q = q;
  r.N = static_cast<std::size_t>(N);
  r.M = std::move(M);
  if (delta > 1)
    r.kind = RingKind::Skew;
  else if (e == 0)
    r.kind = RingKind::EqualChar;
  else if (e == 1)
    r.kind = RingKind::Unramified;
  else
    r.kind = RingKind::Eisenstein;

  if (e > 0) {
    if (desc.eisenstein) {
      std::optional<GaloisRing::Element> rho;
      for (const auto& c : *desc.eisenstein) r.eis.push_back(embed_coefficient(r.gr, c, desc.f, rho));
    } else {
      r.eis.assign(static_cast<std::size_t>(e), r.gr.zero());
      r.eis[0] = r.gr.from_integer(-desc.p);
    }
  }

  // Monomial x^i Y^j p^k has valuation i + delta*(j + e*k).
  r.pos_slot.resize(static_cast<std::size_t>(precision));
  r.pos_k.resize(static_cast<std::size_t>(precision));
  for (int v = 0; v < precision; ++v) {
    const int i = v % delta;
    const int w = v / delta;
    const int j = e > 0 ? w % e : w;
    const int k = e > 0 ? w / e : 0;
    r.pos_slot[static_cast<std::size_t>(v)] = i * J + j;
    r.pos_k[static_cast<std::size_t>(v)] = k;
  }

  const std::size_t n = r.N;
  std::vector<Impl::Structured> structured(n);
  for (std::size_t a = 0; a < n; ++a) structured[a] = r.to_structured(static_cast<Elem>(a));

  const int R = precision;
  const std::size_t qs = static_cast<std::size_t>(q);
  auto mono_index = [&](int v, int d) { return static_cast<std::size_t>(v) * qs + static_cast<std::size_t>(d); };
  const std::size_t mono_count = static_cast<std::size_t>(R) * qs;

  // top[a] = (position, digit) of the highest nonzero digit; rest[a] = a without it.
  std::vector<int> top_pos(n, -1), top_digit(n, 0);
  std::vector<Elem> rest(n, 0);
  for (std::size_t a = 1; a < n; ++a) {
    std::uint64_t weight = 1;
    int pos = 0;
    while (weight * q <= a) {
      weight *= q;
      ++pos;
    }
    top_pos[a] = pos;
    top_digit[a] = static_cast<int>(a / weight);
    rest[a] = static_cast<Elem>(a - static_cast<std::uint64_t>(top_digit[a]) * weight);
  }

  // a + b = (a + rest[b]) + top monomial of b.
  std::vector<Elem> plus_mono(n * mono_count, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (int v = 0; v < R; ++v)
      for (int d = 1; d < static_cast<int>(q); ++d) {
        auto s = structured[a];
        const auto m = r.to_structured(r.monomial(v, d));
        for (int i = 0; i < delta; ++i)
          for (int j = 0; j < J; ++j) {
            auto& c = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            c = r.gr.add(c, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
          }
        plus_mono[a * mono_count + mono_index(v, d)] = r.from_structured(s);
      }
  r.add.resize(n * n);
  r.neg.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Elem* row = r.add.data() + a * n;
    row[0] = static_cast<Elem>(a);
    for (std::size_t b = 1; b < n; ++b) {
      row[b] = plus_mono[static_cast<std::size_t>(row[rest[b]]) * mono_count + mono_index(top_pos[b], top_digit[b])];
      if (row[b] == 0) r.neg[a] = static_cast<Elem>(b);
    }
  }

  // Multiplication is biadditive, so the table follows from products of
  // single-digit monomials.
  std::vector<Elem> mono_prod(mono_count * mono_count, 0);
  for (int v = 0; v < R; ++v)
    for (int dv = 1; dv < static_cast<int>(q); ++dv) {
      const auto sa = r.to_structured(r.monomial(v, dv));
      for (int w = 0; w < R; ++w)
        for (int dw = 1; dw < static_cast<int>(q); ++dw) {
          const auto sb = r.to_structured(r.monomial(w, dw));
          mono_prod[mono_index(v, dv) * mono_count + mono_index(w, dw)] = r.from_structured(r.multiply(sa, sb));
        }
    }

  // by_mono[a][m] = a * monomial m.
  std::vector<Elem> by_mono(n * mono_count, 0);
  for (std::size_t a = 1; a < n; ++a) {
    const std::size_t ma = mono_index(top_pos[a], top_digit[a]);
    for (std::size_t mb = 0; mb < mono_count; ++mb) {
      if (mb % qs == 0) continue;
      const Elem head = mono_prod[ma * mono_count + mb];
      const Elem tail = by_mono[rest[a] * mono_count + mb];
      by_mono[a * mono_count + mb] = r.add[static_cast<std::size_t>(head) * n + tail];
    }
  }
  r.mul.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    Elem* row = r.mul.data() + a * n;
    for (std::size_t b = 1; b < n; ++b) {
      const Elem head = by_mono[a * mono_count + mono_index(top_pos[b], top_digit[b])];
      row[b] = r.add[static_cast<std::size_t>(head) * n + row[rest[b]]];
    }
  }

  r.val.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    int v = 0;
    std::uint64_t x = a;
    while (v < R && x % q == 0) {
      x /= q;
      ++v;
    }
    r.val[a] = a == 0 ? R : v;
  }

  r.one_id = 1;
  {
    auto s = r.zero_structured();
    if (delta > 1) {
      s[1][0] = r.gr.one();
    } else {
      Impl::Block y(2, r.gr.zero());
      y[1] = r.gr.one();
      s[0] = r.reduce(y);
    }
    r.pi_id = r.from_structured(s);
    auto c = r.zero_structured();
    Impl::Block y(2, r.gr.zero());
    y[1] = r.gr.one();
    c[0] = r.reduce(y);
    r.center_pi_id = r.from_structured(c);
  }

  r.upow.assign(static_cast<std::size_t>(R) + 1, 0);
  r.upow[0] = r.one_id;
  for (int k = 1; k <= R; ++k)
    r.upow[static_cast<std::size_t>(k)] = r.mul[static_cast<std::size_t>(r.upow[static_cast<std::size_t>(k) - 1]) * n + r.pi_id];

  const std::uint64_t unit_count = n - n / q;
  r.inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (r.val[a] != 0) continue;
    Elem base = static_cast<Elem>(a), acc = r.one_id;
    std::uint64_t k = unit_count - 1;
    while (k > 0) {
      if (k & 1U) acc = r.mul[static_cast<std::size_t>(acc) * n + base];
      base = r.mul[static_cast<std::size_t>(base) * n + base];
      k >>= 1U;
    }
    r.inv[a] = acc;
  }

  constexpr Elem kUnset = static_cast<Elem>(-1);
  r.div.assign(static_cast<std::size_t>(R) + 1, std::vector<Elem>(n, kUnset));
  for (int s = 0; s <= R; ++s) {
    auto& table = r.div[static_cast<std::size_t>(s)];
    const std::size_t ps = r.upow[static_cast<std::size_t>(s)];
    for (std::size_t t = 0; t < n; ++t) {
      const Elem a = r.mul[ps * n + t];
      if (table[a] == kUnset) table[a] = static_cast<Elem>(t);
    }
  }

  if (r.mul[r.pi_id * n + r.one_id] != r.pi_id || r.val[r.pi_id] != (R > 1 ? 1 : R))
    throw VerificationFailure("uniformizer has wrong valuation");

  return ResidueRing(std::move(impl));
}

const FieldDescriptor& ResidueRing::descriptor() const { return impl_->desc; }
int ResidueRing::precision() const { return impl_->R; }
std::uint64_t ResidueRing::residue_size() const { return impl_->q; }
std::size_t ResidueRing::size() const { return impl_->N; }
RingKind ResidueRing::kind() const { return impl_->kind; }
bool ResidueRing::is_commutative() const { return impl_->kind != RingKind::Skew; }
Elem ResidueRing::one() const { return impl_->one_id; }
Elem ResidueRing::uniformizer() const { return impl_->pi_id; }
Elem ResidueRing::center_uniformizer() const { return impl_->center_pi_id; }

Elem ResidueRing::uniformizer_power(int k) const {
  if (k < 0) throw InvalidInput("negative power of the uniformizer");
  return k >= impl_->R ? 0 : impl_->upow[static_cast<std::size_t>(k)];
}

Elem ResidueRing::pow(Elem a, std::uint64_t k) const {
  Elem acc = one();
  while (k > 0) {
    if (k & 1U) acc = mul(acc, a);
    a = mul(a, a);
    k >>= 1U;
  }
  return acc;
}

Elem ResidueRing::inverse(Elem a) const {
  if (!is_unit(a)) throw InvalidInput("element " + format(a) + " is not a unit");
  return impl_->inv[a];
}

Elem ResidueRing::truncate(Elem a, int s) const {
  if (s >= impl_->R) return a;
  if (s <= 0) return 0;
  return static_cast<Elem>(a % static_cast<std::uint64_t>(ipow64(static_cast<std::int64_t>(impl_->q), s)));
}

Elem ResidueRing::divide_by_uniformizer_power(int s, Elem a) const {
  if (s < 0 || s > impl_->R || valuation(a) < s)
    throw InvalidInput("element is not divisible by pi^" + std::to_string(s));
  return impl_->div[static_cast<std::size_t>(s)][a];
}

std::vector<int> ResidueRing::digits(Elem a) const { return impl_->digits_of(a); }

Elem ResidueRing::from_digits(std::span<const int> digits) const {
  if (digits.size() > static_cast<std::size_t>(impl_->R)) throw InvalidInput("too many digits for precision R");
  std::uint64_t id = 0, weight = 1;
  for (int d : digits) {
    if (d < 0 || static_cast<std::uint64_t>(d) >= impl_->q) throw InvalidInput("digit out of range");
    id += static_cast<std::uint64_t>(d) * weight;
    weight *= impl_->q;
  }
  return static_cast<Elem>(id);
}

Elem ResidueRing::from_integer(std::int64_t z) const {
  auto s = impl_->zero_structured();
  s[0][0] = impl_->gr.from_integer(z);
  return impl_->from_structured(s);
}

std::string ResidueRing::format(Elem a) const { return encode_digits(digits(a), impl_->q); }

Elem ResidueRing::parse(std::string_view text) const {
  const auto dg = decode_digits(text, impl_->q);
  return from_digits(dg);
}

std::vector<Elem> ResidueRing::coefficient_elements() const {
  std::vector<Elem> out;
  for (std::size_t a = 0; a < impl_->N; ++a) {
    const auto dg = digits(static_cast<Elem>(a));
    bool ok = true;
    for (int v = 0; v < impl_->R && ok; ++v) ok = v % impl_->delta == 0 || dg[static_cast<std::size_t>(v)] == 0;
    if (ok) out.push_back(static_cast<Elem>(a));
  }
  return out;
}

Elem ResidueRing::twist(Elem a) const {
  auto s = impl_->to_structured(a);
  for (int i = 1; i < impl_->delta; ++i)
    for (const auto& c : s[static_cast<std::size_t>(i)])
      if (!impl_->gr.is_zero(c)) throw InvalidInput("twist expects a coefficient element");
  s[0] = impl_->block_frobenius(s[0], impl_->twist_power);
  return impl_->from_structured(s);
}

Elem ResidueRing::coefficient_frobenius(Elem a, int power) const {
  auto s = impl_->to_structured(a);
  for (auto& block : s) block = impl_->block_frobenius(block, power);
  return impl_->from_structured(s);
}

RingAutomorphism RingAutomorphism::then(const RingAutomorphism& next) const {
  RingAutomorphism out;
  out.image.resize(image.size());
  for (std::size_t a = 0; a < image.size(); ++a) out.image[a] = next.image[image[a]];
  return out;
}

bool RingAutomorphism::is_identity() const {
  for (std::size_t a = 0; a < image.size(); ++a)
    if (image[a] != a) return false;
  return true;
}

int RingAutomorphism::order() const {
  RingAutomorphism power = *this;
  for (int k = 1; k <= static_cast<int>(image.size()) + 1; ++k) {
    if (power.is_identity()) return k;
    power = power.then(*this);
  }
  throw VerificationFailure("automorphism has no finite order");
}

RingAutomorphism frobenius_lift(const ResidueRing& ring) {
  if (ring.kind() != RingKind::Unramified)
    throw InvalidInput("frobenius_lift expects an unramified ring, got " + std::string(to_string(ring.kind())));
  RingAutomorphism out;
  out.image.resize(ring.size());
  for (std::size_t a = 0; a < ring.size(); ++a) out.image[a] = ring.coefficient_frobenius(static_cast<Elem>(a), 1);
  if (!verify_ring_isomorphism(ring, ring, out.image))
    throw VerificationFailure("Frobenius lift is not a ring automorphism");
  return out;
}

}  // namespace btlab

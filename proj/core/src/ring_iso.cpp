#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "btlab/residue_ring.hpp"

namespace btlab {

namespace {

constexpr Elem kUnmapped = static_cast<Elem>(-1);

int additive_order(const ResidueRing& ring, Elem a) {
  int k = 1;
  for (Elem s = a; s != 0; s = ring.add(s, a)) ++k;
  return a == 0 ? 1 : k - 1;
}

std::uint64_t multiplicative_order(const ResidueRing& ring, Elem a) {
  std::uint64_t k = 1;
  for (Elem s = a; s != ring.one(); s = ring.mul(s, a)) ++k;
  return k;
}

// Per-element data preserved by every ring isomorphism.
using Signature = std::tuple<int, int, std::uint64_t, int, int>;

Signature signature(const ResidueRing& ring, Elem a) {
  const std::uint64_t order = ring.is_unit(a) ? multiplicative_order(ring, a) : 0;
  return {ring.valuation(a), additive_order(ring, a), order, ring.valuation(ring.mul(a, a)),
          ring.valuation(ring.sub(ring.mul(a, a), a))};
}

struct Profile {
  std::vector<Signature> sig;
  std::map<Signature, std::vector<Elem>> classes;
  std::uint64_t unit_exponent = 1;
};

Profile profile(const ResidueRing& ring) {
  Profile out;
  out.sig.resize(ring.size());
  for (std::size_t a = 0; a < ring.size(); ++a) {
    out.sig[a] = signature(ring, static_cast<Elem>(a));
    out.classes[out.sig[a]].push_back(static_cast<Elem>(a));
    if (const auto ord = std::get<2>(out.sig[a]); ord > 0) out.unit_exponent = std::lcm(out.unit_exponent, ord);
  }
  return out;
}

// Partial map from a to b grown by closing the source under + and *.
class ClosureMap {
 public:
  ClosureMap(const ResidueRing& a, const ResidueRing& b)
      : a_(a), b_(b), image_(a.size(), kUnmapped), preimage_(b.size(), kUnmapped) {}

  bool assign(Elem x, Elem y) {
    const std::size_t mark = trail_.size();
    if (!set(x, y)) {
      undo(mark);
      return false;
    }
    for (std::size_t head = mark; head < trail_.size(); ++head) {
      const Elem u = trail_[head];
      for (std::size_t i = 0; i <= head; ++i) {
        const Elem w = trail_[i];
        if (!set(a_.add(u, w), b_.add(image_[u], image_[w])) || !set(a_.mul(u, w), b_.mul(image_[u], image_[w])) ||
            !set(a_.mul(w, u), b_.mul(image_[w], image_[u]))) {
          undo(mark);
          return false;
        }
      }
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      preimage_[image_[trail_.back()]] = kUnmapped;
      image_[trail_.back()] = kUnmapped;
      trail_.pop_back();
    }
  }
  bool complete() const { return trail_.size() == a_.size(); }
  const std::vector<Elem>& image() const { return image_; }

 private:
  bool set(Elem x, Elem y) {
    if (image_[x] != kUnmapped) return image_[x] == y;
    if (preimage_[y] != kUnmapped) return false;
    image_[x] = y;
    preimage_[y] = x;
    trail_.push_back(x);
    return true;
  }

  const ResidueRing& a_;
  const ResidueRing& b_;
  std::vector<Elem> image_;
  std::vector<Elem> preimage_;
  std::vector<Elem> trail_;
};

// Greedy generating set: repeatedly add the element outside the current
// subring whose signature class is smallest.
std::vector<Elem> generating_set(const ResidueRing& ring, const Profile& prof) {
  ClosureMap closure(ring, ring);
  closure.assign(0, 0);
  closure.assign(ring.one(), ring.one());
  std::vector<Elem> gens;
  while (!closure.complete()) {
    Elem best = kUnmapped;
    std::size_t best_size = SIZE_MAX;
    for (std::size_t a = 0; a < ring.size(); ++a) {
      if (closure.image()[a] != kUnmapped) continue;
      const std::size_t sz = prof.classes.at(prof.sig[a]).size();
      if (sz < best_size) {
        best_size = sz;
        best = static_cast<Elem>(a);
      }
    }
    gens.push_back(best);
    closure.assign(best, best);
  }
  return gens;
}

}  // namespace

bool verify_ring_isomorphism(const ResidueRing& a, const ResidueRing& b, std::span<const Elem> map) {
  if (a.size() != b.size() || map.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (Elem y : map) {
    if (y >= b.size() || hit[y]) return false;
    hit[y] = true;
  }
  if (map[a.one()] != b.one()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const auto ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
      if (map[a.add(ex, ey)] != b.add(map[x], map[y])) return false;
      if (map[a.mul(ex, ey)] != b.mul(map[x], map[y])) return false;
    }
  return true;
}

RingIsoResult rings_isomorphic(const ResidueRing& a, const ResidueRing& b, const Budget& budget) {
  RingIsoResult out;
  auto mismatch = [&](std::string invariant, auto va, auto vb) {
    out.invariant = std::move(invariant);
    out.detail = std::to_string(va) + " vs " + std::to_string(vb);
    return out;
  };

  if (a.size() != b.size()) return mismatch("size", a.size(), b.size());
  if (a.residue_size() != b.residue_size()) return mismatch("residue field size", a.residue_size(), b.residue_size());
  if (a.is_commutative() != b.is_commutative())
    return mismatch("commutativity", static_cast<int>(a.is_commutative()), static_cast<int>(b.is_commutative()));
  if (const int oa = additive_order(a, a.one()), ob = additive_order(b, b.one()); oa != ob)
    return mismatch("additive order of 1", oa, ob);
  const int p = a.descriptor().p;
  if (const int va = a.valuation(a.from_integer(p)), vb = b.valuation(b.from_integer(p)); va != vb)
    return mismatch("valuation of p", va, vb);

  const Profile pa = profile(a);
  const Profile pb = profile(b);
  if (pa.unit_exponent != pb.unit_exponent) return mismatch("unit group exponent", pa.unit_exponent, pb.unit_exponent);
  for (const auto& [sig, members] : pa.classes) {
    const auto it = pb.classes.find(sig);
    const std::size_t other = it == pb.classes.end() ? 0 : it->second.size();
    if (other != members.size()) return mismatch("element signature multiset", members.size(), other);
  }

  const auto gens = generating_set(a, pa);
  ClosureMap map(a, b);
  map.assign(0, 0);
  if (!map.assign(a.one(), b.one())) return mismatch("prime subring", 0, 1);

  std::size_t nodes = 0;
  auto search = [&](auto&& self, std::size_t level) -> bool {
    if (level == gens.size()) return map.complete();
    const Elem g = gens[level];
    if (map.image()[g] != kUnmapped) return self(self, level + 1);
    for (Elem y : pb.classes.at(pa.sig[g])) {
      if (++nodes > budget.max_search_nodes) throw_budget("ring isomorphism search nodes", nodes, budget.max_search_nodes);
      const std::size_t mark = map.mark();
      if (map.assign(g, y)) {
        if (self(self, level + 1)) return true;
        map.undo(mark);
      }
    }
    return false;
  };

  if (!search(search, 0)) {
    out.invariant = "exhaustive search";
    out.detail = "no generator images extend to an isomorphism";
    return out;
  }
  if (!verify_ring_isomorphism(a, b, map.image()))
    throw VerificationFailure("ring isomorphism witness failed verification");
  out.witness = map.image();
  return out;
}

KrasnerWitness krasner_witness(const FieldDescriptor& desc, const Budget& budget) {
  if (desc.e.is_infinite() || desc.delta != 1)
    throw InvalidInput("krasner_witness expects a commutative field with finite e");
  const int e = desc.e.value();
  auto source = ResidueRing::build(desc, e, budget);
  auto target = ResidueRing::build(FieldDescriptor::equal_characteristic(desc.p, desc.f), e, budget);
  // Below precision e every element is sum_j c_j X^j with c_j residue digits,
  // which is exactly the digit vector of sum_j c_j t^j.
  std::vector<Elem> map(source.size());
  std::iota(map.begin(), map.end(), Elem{0});
  if (!verify_ring_isomorphism(source, target, map))
    throw VerificationFailure("structural map O_e -> F_q[t]/(t^e) is not a ring isomorphism");
  return {std::move(source), std::move(target), std::move(map)};
}

}  // namespace btlab

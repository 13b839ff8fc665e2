#include "btlab/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace btlab {

namespace {

void sub_scaled(const ResidueRing& ring, Vec& target, const Vec& row, Elem c) {
  for (std::size_t k = 0; k < target.size(); ++k)
    if (row[k] != 0) target[k] = ring.sub(target[k], ring.mul(row[k], c));
}

Vec scaled(const ResidueRing& ring, const Vec& row, Elem c) {
  Vec out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = ring.mul(row[k], c);
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

void check_same(const SubmoduleRep& a, const SubmoduleRep& b) {
  if (!a.ring().same_ring(b.ring())) throw Mismatch("submodules live over different rings");
  if (a.rank() != b.rank()) throw Mismatch("submodules have different ambient rank");
}

}  // namespace

int SubmoduleRep::log_size() const {
  int total = 0;
  for (int s : pivot_val_) total += ring_.precision() - s;
  return total;
}

bool SubmoduleRep::is_vertex_module() const {
  for (const auto& row : rows_)
    for (Elem x : row)
      if (ring_.is_unit(x)) return true;
  return false;
}

std::string SubmoduleRep::format() const {
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out.push_back(';');
    for (std::size_t k = 0; k < rows_[i].size(); ++k) {
      if (k) out.push_back(',');
      out += ring_.format(rows_[i][k]);
    }
  }
  return out;
}

SubmoduleRep canonical_span(const ResidueRing& ring, int d, std::span<const Vec> generators) {
  if (d < 1) throw InvalidInput("ambient rank d must be >= 1");
  std::vector<Vec> pool;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != d) throw InvalidInput("generator length differs from d");
    for (Elem x : g)
      if (x >= ring.size()) throw InvalidInput("generator entry is not a ring element");
    if (!is_zero(g)) pool.push_back(g);
  }

  SubmoduleRep out(ring, d);
  const int R = ring.precision();
  for (int col = 0; col < d && !pool.empty(); ++col) {
    std::size_t best = pool.size();
    int best_val = R;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int v = ring.valuation(pool[i][static_cast<std::size_t>(col)]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == pool.size()) continue;

    Vec pivot = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const Elem unit = ring.divide_by_uniformizer_power(best_val, pivot[static_cast<std::size_t>(col)]);
    pivot = scaled(ring, pivot, ring.inverse(unit));

    std::vector<Vec> next;
    next.reserve(pool.size() + 1);
    for (auto& row : pool) {
      const Elem x = row[static_cast<std::size_t>(col)];
      if (x != 0) sub_scaled(ring, row, pivot, ring.divide_by_uniformizer_power(best_val, x));
      if (!is_zero(row)) next.push_back(std::move(row));
    }
    // Multiples of the pivot row that vanish on this column.
    if (Vec ann = scaled(ring, pivot, ring.uniformizer_power(R - best_val)); !is_zero(ann)) next.push_back(std::move(ann));
    pool = std::move(next);

    out.rows_.push_back(std::move(pivot));
    out.pivot_col_.push_back(col);
    out.pivot_val_.push_back(best_val);
  }

  auto& rows = out.rows_;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = i + 1; k < rows.size(); ++k) {
      const auto c = static_cast<std::size_t>(out.pivot_col_[k]);
      const int s = out.pivot_val_[k];
      const Elem x = rows[i][c];
      const Elem excess = ring.sub(x, ring.truncate(x, s));
      if (excess != 0) sub_scaled(ring, rows[i], rows[k], ring.divide_by_uniformizer_power(s, excess));
    }
  }
  return out;
}

SubmoduleRep full_module(const ResidueRing& ring, int d) {
  std::vector<Vec> basis(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ring.one();
  return canonical_span(ring, d, basis);
}

SubmoduleRep parse_module(const ResidueRing& ring, int d, std::string_view text) {
  std::vector<Vec> rows;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const auto stop = std::min(text.find(';', start), text.size());
    const auto row_text = text.substr(start, stop - start);
    Vec row;
    std::size_t s = 0;
    while (s <= row_text.size()) {
      const auto e = std::min(row_text.find(',', s), row_text.size());
      row.push_back(ring.parse(row_text.substr(s, e - s)));
      s = e + 1;
    }
    if (static_cast<int>(row.size()) != d)
      throw InvalidInput("module row '" + std::string(row_text) + "' does not have " + std::to_string(d) + " entries");
    rows.push_back(std::move(row));
    start = stop + 1;
  }
  auto out = canonical_span(ring, d, rows);
  if (out.rows() != rows) throw InvalidInput("module string is not in canonical form: '" + std::string(text) + "'");
  return out;
}

Vec reduce_vector(const SubmoduleRep& a, Vec v) {
  const auto& ring = a.ring();
  if (static_cast<int>(v.size()) != a.rank()) throw Mismatch("vector length differs from module rank");
  for (std::size_t k = 0; k < a.rows().size(); ++k) {
    const auto c = static_cast<std::size_t>(a.pivot_columns()[k]);
    const int s = a.pivot_valuations()[k];
    const Elem x = v[c];
    if (x == 0 || ring.valuation(x) < s) continue;
    sub_scaled(ring, v, a.rows()[k], ring.divide_by_uniformizer_power(s, x));
  }
  return v;
}

bool contains_vector(const SubmoduleRep& a, const Vec& v) { return is_zero(reduce_vector(a, v)); }

bool contains(const SubmoduleRep& a, const SubmoduleRep& b) {
  check_same(a, b);
  if (b.log_size() > a.log_size()) return false;
  for (const auto& row : b.rows())
    if (!contains_vector(a, row)) return false;
  return true;
}

SubmoduleRep scale_by_uniformizer(const SubmoduleRep& a) {
  std::vector<Vec> rows;
  for (const auto& row : a.rows()) rows.push_back(scaled(a.ring(), row, a.ring().uniformizer()));
  return canonical_span(a.ring(), a.rank(), rows);
}

std::vector<SubmoduleRep> enumerate_vertex_modules(const ResidueRing& ring, int d, const Budget& budget) {
  if (d < 1) throw InvalidInput("ambient rank d must be >= 1");
  const int R = ring.precision();
  const std::uint64_t q = ring.residue_size();

  // Transversal of O_R / pi^s O_R: ids below q^s.
  std::vector<std::size_t> transversal(static_cast<std::size_t>(R) + 1, 1);
  for (int s = 1; s <= R; ++s) transversal[static_cast<std::size_t>(s)] = transversal[static_cast<std::size_t>(s) - 1] * q;

  struct Entry {
    std::vector<int> diag;
    SubmoduleRep module;
  };
  std::vector<Entry> found;
  std::size_t candidates = 0;

  std::vector<int> diag(static_cast<std::size_t>(d), 0);
  std::size_t shapes = 1;
  for (int j = 0; j < d; ++j) shapes *= static_cast<std::size_t>(R + 1);
  for (std::size_t code = 0; code < shapes; ++code) {
    std::size_t c = code;
    for (int j = d - 1; j >= 0; --j) {
      diag[static_cast<std::size_t>(j)] = static_cast<int>(c % static_cast<std::size_t>(R + 1));
      c /= static_cast<std::size_t>(R + 1);
    }
    std::vector<int> pivots;
    for (int j = 0; j < d; ++j)
      if (diag[static_cast<std::size_t>(j)] < R) pivots.push_back(j);
    if (pivots.empty()) continue;

    // Free entries: row of pivot j, column k > j; ranges over the transversal for column k.
    struct Slot {
      std::size_t row, col, range;
    };
    std::vector<Slot> slots;
    std::size_t count = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (int k = pivots[r] + 1; k < d; ++k) {
        const std::size_t range = transversal[static_cast<std::size_t>(diag[static_cast<std::size_t>(k)])];
        if (range == 1) continue;
        slots.push_back({r, static_cast<std::size_t>(k), range});
        count *= range;
        if (count > budget.max_candidates) throw_budget("lattice candidates", count, budget.max_candidates);
      }
    candidates += count;
    if (candidates > budget.max_candidates) throw_budget("lattice candidates", candidates, budget.max_candidates);

    std::vector<Vec> rows(pivots.size(), Vec(static_cast<std::size_t>(d), 0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
      rows[r][static_cast<std::size_t>(pivots[r])] = ring.uniformizer_power(diag[static_cast<std::size_t>(pivots[r])]);
    std::vector<std::size_t> odo(slots.size(), 0);
    while (true) {
      bool unit = false;
      for (const auto& row : rows)
        for (Elem x : row) unit = unit || ring.is_unit(x);
      if (unit) {
        auto m = canonical_span(ring, d, rows);
        if (m.rows() == rows) {
          found.push_back({diag, std::move(m)});
          if (found.size() > budget.max_vertices) throw_budget("vertex modules", found.size(), budget.max_vertices);
        }
      }
      std::size_t i = 0;
      for (; i < slots.size(); ++i) {
        if (++odo[i] < slots[i].range) {
          rows[slots[i].row][slots[i].col] = static_cast<Elem>(odo[i]);
          break;
        }
        odo[i] = 0;
        rows[slots[i].row][slots[i].col] = 0;
      }
      if (i == slots.size()) break;
    }
  }

  std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
    const int sa = std::accumulate(a.diag.begin(), a.diag.end(), 0);
    const int sb = std::accumulate(b.diag.begin(), b.diag.end(), 0);
    if (sa != sb) return sa < sb;
    if (a.diag != b.diag) return a.diag < b.diag;
    return a.module.rows() < b.module.rows();
  });
  std::vector<SubmoduleRep> out;
  out.reserve(found.size());
  for (auto& e : found) out.push_back(std::move(e.module));
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1]) throw VerificationFailure("duplicate canonical module in enumeration");
  return out;
}

std::vector<int> invariant_factors(const SubmoduleRep& a) {
  const auto& ring = a.ring();
  if (!ring.is_commutative()) throw InvalidInput("invariant_factors is implemented for commutative rings only");
  const int R = ring.precision();
  const int d = a.rank();
  auto m = a.rows();
  const std::size_t rows = m.size();
  std::vector<int> out;
  for (std::size_t t = 0; t < rows; ++t) {
    std::size_t bi = t, bj = 0;
    int best = R;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < static_cast<std::size_t>(d); ++j)
        if (const int v = ring.valuation(m[i][j]); v < best) {
          best = v;
          bi = i;
          bj = j;
        }
    if (best == R) break;
    std::swap(m[t], m[bi]);
    for (auto& row : m) std::swap(row[t], row[bj]);
    const Elem unit = ring.divide_by_uniformizer_power(best, m[t][t]);
    m[t] = scaled(ring, m[t], ring.inverse(unit));
    for (std::size_t i = t + 1; i < rows; ++i)
      if (m[i][t] != 0) sub_scaled(ring, m[i], m[t], ring.divide_by_uniformizer_power(best, m[i][t]));
    for (std::size_t j = t + 1; j < static_cast<std::size_t>(d); ++j) {
      if (m[t][j] == 0) continue;
      const Elem c = ring.divide_by_uniformizer_power(best, m[t][j]);
      for (auto& row : m) row[j] = ring.sub(row[j], ring.mul(row[t], c));
    }
    out.push_back(best);
  }
  out.resize(static_cast<std::size_t>(d), R);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace btlab

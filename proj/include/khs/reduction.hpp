#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "khs/complex.hpp"
#include "khs/cube.hpp"

namespace khs {

namespace detail {

template <class K>
bool is_unit(const K& x) {
  if constexpr (ScalarTraits<K>::ring == RingKind::Integers) return mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0;
  else return !ScalarTraits<K>::is_zero(x);
}

/// Complex stored as adjacency lists over global generator ids, for in-place
/// Gaussian elimination.
template <class K>
class MutableComplex {
 public:
  using Row = std::vector<std::pair<int, K>>;

  explicit MutableComplex(const FilteredComplex<K>& c) {
    for (int h : c.degrees()) {
      const auto& id = c.ids(h);
      for (std::size_t i = 0; i < id.size(); ++i) {
        if (id[i] != static_cast<int>(degree_.size())) throw std::invalid_argument("MutableComplex: ids must be consecutive");
        degree_.push_back(h);
        level_.push_back(c.levels(h)[i]);
      }
    }
    const int n = static_cast<int>(degree_.size());
    out_.resize(n);
    in_.resize(n);
    alive_.assign(n, true);
    for (int h : c.degrees()) {
      if (c.dim(h + 1) == 0) continue;
      const auto& src = c.ids(h);
      const auto& dst = c.ids(h + 1);
      const auto& d = c.differential(h);
      for (int j = 0; j < d.cols(); ++j)
        for (const auto& [i, x] : d.column(j)) {
          out_[src[j]].emplace_back(dst[i], x);
          in_[dst[i]].push_back(src[j]);
        }
    }
    for (auto& r : out_) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& r : in_) std::sort(r.begin(), r.end());
  }

  int size() const { return static_cast<int>(degree_.size()); }
  bool alive(int g) const { return alive_[g]; }
  int degree(int g) const { return degree_[g]; }
  int level(int g) const { return level_[g]; }
  const Row& out(int g) const { return out_[g]; }
  const std::vector<int>& in(int g) const { return in_[g]; }

  K entry(int b, int c) const {
    const Row& r = out_[b];
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int x) { return e.first < x; });
    return (it != r.end() && it->first == c) ? it->second : K(0);
  }

  /// Cancels the pair b -> c (entry phi must be a unit). Tracked chains in the
  /// degree of c get the correction -(x_c / phi) d(b); entries on b are dropped.
  void cancel(int b, int c, std::vector<std::map<int, K>*>& chains) {
    const K phi = entry(b, c);
    if (!is_unit(phi)) throw std::logic_error("cancel: pivot is not a unit");
    const K phi_inv = inverse_unit(phi);
    const Row db = out_[b];
    for (auto* ch : chains) {
      auto it = ch->find(c);
      if (it != ch->end()) {
        const K f = it->second * phi_inv;
        for (const auto& [y, v] : db) {
          K& e = (*ch)[y];
          e -= f * v;
          if (ScalarTraits<K>::is_zero(e)) ch->erase(y);
        }
      }
      ch->erase(b);
    }
    const std::vector<int> sources = in_[c];
    for (int x : sources) {
      if (x == b) continue;
      const K f = entry(x, c) * phi_inv;
      axpy_row(x, f, db);
    }
    for (const auto& [y, v] : out_[b]) erase_sorted(in_[y], b);
    for (int x : in_[b]) erase_entry(out_[x], b);
    for (const auto& [y, v] : out_[c]) erase_sorted(in_[y], c);
    for (int x : in_[c]) erase_entry(out_[x], c);
    out_[b].clear();
    out_[c].clear();
    in_[b].clear();
    in_[c].clear();
    alive_[b] = alive_[c] = false;
  }

  /// Survivors as a FilteredComplex, ids preserved.
  FilteredComplex<K> to_complex() const {
    std::map<int, std::vector<int>> by_degree;
    for (int g = 0; g < size(); ++g)
      if (alive_[g]) by_degree[degree_[g]].push_back(g);
    std::vector<int> local(size(), -1);
    FilteredComplex<K> c;
    for (auto& [h, gens] : by_degree) {
      std::vector<int> lv;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        local[gens[i]] = static_cast<int>(i);
        lv.push_back(level_[gens[i]]);
      }
      c.add_degree(h, lv, gens);
    }
    for (auto& [h, gens] : by_degree) {
      SparseMatrix<K> d(c.dim(h + 1), c.dim(h));
      if (c.dim(h + 1) > 0)
        for (std::size_t i = 0; i < gens.size(); ++i) {
          typename SparseMatrix<K>::Column col;
          for (const auto& [y, v] : out_[gens[i]]) col.emplace_back(local[y], v);
          d.set_column(static_cast<int>(i), std::move(col));
        }
      c.set_differential(h, std::move(d));
    }
    return c;
  }

 private:
  static K inverse_unit(const K& phi) {
    if constexpr (ScalarTraits<K>::ring == RingKind::Integers) return phi;  // +-1
    else return ScalarTraits<K>::inverse(phi);
  }
  static void erase_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }
  static void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }
  static void erase_entry(Row& r, int x) {
    auto it = std::lower_bound(r.begin(), r.end(), x, [](const auto& e, int y) { return e.first < y; });
    if (it != r.end() && it->first == x) r.erase(it);
  }
  // out[x] -= f * row, keeping in-lists current.
  void axpy_row(int x, const K& f, const Row& row) {
    Row merged;
    Row& cur = out_[x];
    merged.reserve(cur.size() + row.size());
    auto p = cur.begin();
    auto q = row.begin();
    while (p != cur.end() || q != row.end()) {
      if (q == row.end() || (p != cur.end() && p->first < q->first)) {
        merged.push_back(std::move(*p++));
      } else if (p == cur.end() || q->first < p->first) {
        K v = -(f * q->second);
        if (!ScalarTraits<K>::is_zero(v)) {
          insert_sorted(in_[q->first], x);
          merged.emplace_back(q->first, std::move(v));
        }
        ++q;
      } else {
        K v = p->second - f * q->second;
        if (ScalarTraits<K>::is_zero(v)) erase_sorted(in_[p->first], x);
        else merged.emplace_back(p->first, std::move(v));
        ++p;
        ++q;
      }
    }
    cur = std::move(merged);
  }

  std::vector<int> degree_;
  std::vector<int> level_;
  std::vector<Row> out_;
  std::vector<std::vector<int>> in_;
  std::vector<bool> alive_;
};

template <class K>
std::map<int, K> chain_to_map(const FilteredComplex<K>& c, int h, const Vec<K>& v) {
  std::map<int, K> m;
  const auto& ids = c.ids(h);
  v.for_each([&](int i, const K& x) { m.emplace(ids[i], x); });
  return m;
}

template <class K>
Vec<K> map_to_chain(const FilteredComplex<K>& c, int h, const std::map<int, K>& m) {
  Vec<K> v(c.dim(h));
  for (const auto& [id, x] : m) {
    int i = c.index_of(h, id);
    if (i < 0) throw std::logic_error("reduction: chain supported on a cancelled generator");
    v.set(i, x);
  }
  return v;
}

}  // namespace detail

/// A diagram's Khovanov complex over Z together with its Bar-Natan (F2) and
/// Lee (Z) deformations on one common generator set, and the canonical
/// cycles of the diagram's orientation and its reverse in degree 0.
struct LinkComplexes {
  enum class Method { Naive, Reduced };

  OrientedLinkDiagram diagram;
  Method method = Method::Naive;
  FilteredComplex<mpz_class> khovanov;
  FilteredComplex<F2> bar_natan;
  FilteredComplex<mpz_class> lee;
  Vec<F2> bn_so, bn_sob;
  Vec<mpz_class> lee_so, lee_sob;
  int cancelled_pairs = 0;
};

/// Builds the three complexes from the full cube; with Method::Reduced, unit
/// entries of the Khovanov differential are then cancelled greedily and the
/// same cancellations are replayed on the two deformations.
///
/// Pivot choice: scan generators by id; for a generator b with a unit entry,
/// cancel against the target with the fewest incoming entries (ties: smallest
/// id). Passes repeat until no unit entry remains.
inline LinkComplexes prepare_complexes(const OrientedLinkDiagram& d, LinkComplexes::Method method) {
  LinkComplexes out;
  out.diagram = d;
  out.method = method;
  if (d.empty()) return out;
  Cube cube(d);
  out.khovanov = build_complex<mpz_class>(cube, FrobeniusKind::Khovanov);
  out.bar_natan = build_complex<F2>(cube, FrobeniusKind::BarNatan);
  out.lee = build_complex<mpz_class>(cube, FrobeniusKind::Lee);
  {
    auto [a, b] = canonical_pair<F2>(cube, FrobeniusKind::BarNatan, out.bar_natan);
    out.bn_so = a.chain;
    out.bn_sob = b.chain;
  }
  {
    auto [a, b] = canonical_pair<mpz_class>(cube, FrobeniusKind::Lee, out.lee);
    out.lee_so = a.chain;
    out.lee_sob = b.chain;
  }
  if (method == LinkComplexes::Method::Naive) return out;

  detail::MutableComplex<mpz_class> kz(out.khovanov);
  detail::MutableComplex<F2> bn(out.bar_natan);
  detail::MutableComplex<mpz_class> lee(out.lee);
  auto bn_so = detail::chain_to_map(out.bar_natan, 0, out.bn_so);
  auto bn_sob = detail::chain_to_map(out.bar_natan, 0, out.bn_sob);
  auto lee_so = detail::chain_to_map(out.lee, 0, out.lee_so);
  auto lee_sob = detail::chain_to_map(out.lee, 0, out.lee_sob);
  std::vector<std::map<int, mpz_class>*> no_z;
  std::vector<std::map<int, F2>*> bn_chains{&bn_so, &bn_sob};
  std::vector<std::map<int, mpz_class>*> lee_chains{&lee_so, &lee_sob};

  bool progress = true;
  while (progress) {
    progress = false;
    for (int b = 0; b < kz.size(); ++b) {
      if (!kz.alive(b)) continue;
      int best = -1;
      std::size_t best_in = 0;
      for (const auto& [c, x] : kz.out(b)) {
        if (!detail::is_unit(x)) continue;
        if (best < 0 || kz.in(c).size() < best_in) {
          best = c;
          best_in = kz.in(c).size();
        }
      }
      if (best < 0) continue;
      kz.cancel(b, best, no_z);
      bn.cancel(b, best, bn_chains);
      lee.cancel(b, best, lee_chains);
      ++out.cancelled_pairs;
      progress = true;
    }
  }
  out.khovanov = kz.to_complex();
  out.bar_natan = bn.to_complex();
  out.lee = lee.to_complex();
  out.bn_so = detail::map_to_chain(out.bar_natan, 0, bn_so);
  out.bn_sob = detail::map_to_chain(out.bar_natan, 0, bn_sob);
  out.lee_so = detail::map_to_chain(out.lee, 0, lee_so);
  out.lee_sob = detail::map_to_chain(out.lee, 0, lee_sob);
  return out;
}

}  // namespace khs

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "khs/complex.hpp"
#include "khs/linalg.hpp"
#include "khs/reduction.hpp"
#include "khs/smith.hpp"

namespace khs {

/// Bigraded homology: rank and (for integer coefficients) torsion per (h, q).
struct HomologyTable {
  struct Entry {
    int rank = 0;
    std::vector<mpz_class> torsion;  // prime powers, ascending

    friend bool operator==(const Entry& a, const Entry& b) { return a.rank == b.rank && a.torsion == b.torsion; }
  };

  RingKind ring = RingKind::Integers;
  std::map<std::pair<int, int>, Entry> entries;  // only nonzero groups

  int rank(int h, int q) const {
    auto it = entries.find({h, q});
    return it == entries.end() ? 0 : it->second.rank;
  }
  std::vector<mpz_class> torsion(int h, int q) const {
    auto it = entries.find({h, q});
    return it == entries.end() ? std::vector<mpz_class>{} : it->second.torsion;
  }
  /// Number of Z/order summands at (h, q).
  int torsion_count(int h, int q, const mpz_class& order) const {
    int n = 0;
    for (const auto& t : torsion(h, q)) n += (t == order);
    return n;
  }
  bool is_zero(int h, int q) const { return !entries.count({h, q}); }

  friend bool operator==(const HomologyTable& a, const HomologyTable& b) {
    return a.ring == b.ring && a.entries == b.entries;
  }
};

namespace detail {

template <Field K>
int field_rank_of(const SparseMatrix<K>& m) {
  return m.cols() == 0 || m.rows() == 0 ? 0 : rank(m);
}

}  // namespace detail

/// Homology of a q-graded complex (level-preserving differential), split by q.
/// Coefficients: Z (ranks and torsion), F2 or Q (ranks).
inline HomologyTable graded_homology(const FilteredComplex<mpz_class>& c, RingKind ring) {
  HomologyTable t;
  t.ring = ring;
  std::set<int> qs;
  for (int h : c.degrees())
    for (int q : c.levels(h)) qs.insert(q);
  for (int q : qs) {
    auto piece = c.graded_piece(q).complex;
    if (ring == RingKind::Integers) {
      for (auto& [h, g] : integral_homology(piece))
        if (g.rank > 0 || !g.torsion.empty()) t.entries[{h, q}] = {g.rank, g.torsion};
    } else {
      std::map<int, int> rk;
      if (ring == RingKind::F2) {
        auto p2 = mod2(piece);
        for (int h : p2.degrees()) rk[h] = detail::field_rank_of(p2.differential(h));
      } else {
        auto pq = convert_complex<mpq_class>(piece);
        for (int h : pq.degrees()) rk[h] = detail::field_rank_of(pq.differential(h));
      }
      for (int h : piece.degrees()) {
        const int r = piece.dim(h) - rk[h] - (rk.count(h - 1) ? rk[h - 1] : 0);
        if (r > 0) t.entries[{h, q}] = {r, {}};
      }
    }
  }
  return t;
}

/// Khovanov homology of a diagram.
inline HomologyTable khovanov_homology(const OrientedLinkDiagram& d, RingKind ring,
                                       LinkComplexes::Method method = LinkComplexes::Method::Reduced) {
  if (d.empty()) {
    HomologyTable t;
    t.ring = ring;
    t.entries[{0, 0}] = {1, {}};
    return t;
  }
  return graded_homology(prepare_complexes(d, method).khovanov, ring);
}

inline HomologyTable khovanov_homology(const LinkComplexes& lc, RingKind ring) {
  if (lc.diagram.empty()) return khovanov_homology(lc.diagram, ring);
  return graded_homology(lc.khovanov, ring);
}

}  // namespace khs

#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "khs/complex.hpp"
#include "khs/linalg.hpp"

namespace khs {

/// A filtered complex written as H ⊕ (⊕ E) ⊕ (⊕ A): harmonic generators with
/// zero differential, and two-term pieces b -> c with either a strict jump in
/// level (E) or none (A).
template <Field K>
struct DecomposedComplex {
  enum class Kind { Harmonic, PairSource, PairTarget };

  struct Element {
    int h;
    int level;
    Kind kind;
    int partner = -1;  // index (in its degree) of the other end of a pair
    int origin_id;     // id of the input generator this element grew from
  };
  struct Pair {
    int h;  // degree of the source
    int source_level;
    int target_level;
    int source;  // element index in degree h
    int target;  // element index in degree h+1
    bool is_a() const { return source_level == target_level; }
  };

  /// New basis, per degree, with the inverse pair of change-of-basis
  /// matrices: to_old columns express new elements in input coordinates,
  /// to_new columns express input generators in new coordinates.
  std::map<int, std::vector<Element>> elements;
  std::map<int, SparseMatrix<K>> to_old;
  std::map<int, SparseMatrix<K>> to_new;
  std::vector<Pair> e_pairs;
  std::vector<Pair> a_pairs;
  /// Cancellation order, as (source id, target id) of the input generators.
  std::vector<std::pair<int, int>> cancellations;

  int harmonic_count(int h) const {
    int n = 0;
    auto it = elements.find(h);
    if (it == elements.end()) return 0;
    for (const auto& e : it->second) n += e.kind == Kind::Harmonic;
    return n;
  }
  std::vector<int> harmonic_levels(int h) const {
    std::vector<int> out;
    auto it = elements.find(h);
    if (it == elements.end()) return out;
    for (const auto& e : it->second)
      if (e.kind == Kind::Harmonic) out.push_back(e.level);
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Filtered Gaussian cancellation. At each step the entry b -> c with the
/// smallest level jump is cancelled (ties: smallest id of b), where c is the
/// lowest-level entry of d(b) (ties: smallest id). Target c is replaced by
/// d(b) and every other source x hitting c by x - (d(x)_c / d(b)_c) b; the
/// minimal-jump rule keeps both substitutions filtered.
template <Field K>
DecomposedComplex<K> filtered_reduce(const FilteredComplex<K>& c) {
  if (!c.filtration_monotone()) throw std::invalid_argument("filtered_reduce: differential lowers the filtration");
  struct Gen {
    int h;
    int level;
    int id;
    bool alive = true;
    std::map<int, K> out;  // target gen index -> coefficient
    Vec<K> p;              // current element in input coordinates
  };
  std::vector<Gen> g;
  std::map<int, std::vector<int>> by_degree;
  for (int h : c.degrees())
    for (int i = 0; i < c.dim(h); ++i) {
      Gen x{h, c.level(h, i), c.ids(h)[i], true, {}, Vec<K>(c.dim(h))};
      x.p.set(i, K(1));
      by_degree[h].push_back(static_cast<int>(g.size()));
      g.push_back(std::move(x));
    }
  for (int h : c.degrees()) {
    if (c.dim(h + 1) == 0) continue;
    const auto& d = c.differential(h);
    for (int j = 0; j < d.cols(); ++j)
      for (const auto& [i, v] : d.column(j)) g[by_degree[h][j]].out[by_degree[h + 1][i]] = v;
  }

  DecomposedComplex<K> out;
  struct Made {
    int h;
    int level;
    typename DecomposedComplex<K>::Kind kind;
    int origin;
    Vec<K> p;
  };
  std::vector<Made> made;
  struct RawPair {
    int src_made;
    int tgt_made;
  };
  std::vector<RawPair> pairs;

  while (true) {
    int best_b = -1;
    int best_c = -1;
    int best_jump = std::numeric_limits<int>::max();
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (!g[b].alive || g[b].out.empty()) continue;
      int cmin = -1;
      for (const auto& [t, v] : g[b].out)
        if (cmin < 0 || g[t].level < g[cmin].level || (g[t].level == g[cmin].level && g[t].id < g[cmin].id)) cmin = t;
      const int jump = g[cmin].level - g[b].level;
      if (jump < best_jump || (jump == best_jump && g[b].id < g[best_b].id)) {
        best_jump = jump;
        best_b = static_cast<int>(b);
        best_c = cmin;
      }
    }
    if (best_b < 0) break;
    Gen& b = g[best_b];
    const K phi = b.out.at(best_c);
    // c' = d(b) in input coordinates.
    Vec<K> cp(c.dim(b.h + 1));
    for (const auto& [t, v] : b.out) cp.axpy(v, g[t].p);
    // Clear the c'-component from other sources.
    for (int x : by_degree[b.h]) {
      if (x == best_b || !g[x].alive) continue;
      auto it = g[x].out.find(best_c);
      if (it == g[x].out.end()) continue;
      const K lambda = it->second / phi;
      for (const auto& [t, v] : b.out) {
        K& e = g[x].out[t];
        e -= lambda * v;
        if (is_zero(e)) g[x].out.erase(t);
      }
      g[x].p.axpy(-lambda, b.p);
    }
    // Maps into b and out of c are dropped.
    for (int w : by_degree[b.h - 1]) g[w].out.erase(best_b);
    out.cancellations.emplace_back(b.id, g[best_c].id);
    made.push_back({b.h, b.level, DecomposedComplex<K>::Kind::PairSource, b.id, b.p});
    made.push_back({b.h + 1, g[best_c].level, DecomposedComplex<K>::Kind::PairTarget, g[best_c].id, cp});
    pairs.push_back({static_cast<int>(made.size()) - 2, static_cast<int>(made.size()) - 1});
    b.alive = false;
    b.out.clear();
    g[best_c].alive = false;
    g[best_c].out.clear();
  }

  // Assemble the new basis: harmonic elements first (input order), then pairs.
  for (int h : c.degrees()) {
    auto& elems = out.elements[h];
    for (int x : by_degree[h])
      if (g[x].alive) {
        if (!g[x].out.empty()) throw std::logic_error("filtered_reduce: survivor with nonzero differential");
        elems.push_back({h, g[x].level, DecomposedComplex<K>::Kind::Harmonic, -1, g[x].id});
      }
  }
  std::vector<int> index_in_degree(made.size(), -1);
  for (std::size_t m = 0; m < made.size(); ++m) {
    auto& elems = out.elements[made[m].h];
    index_in_degree[m] = static_cast<int>(elems.size());
    elems.push_back({made[m].h, made[m].level, made[m].kind, -1, made[m].origin});
  }
  for (const auto& rp : pairs) {
    const int s = index_in_degree[rp.src_made];
    const int t = index_in_degree[rp.tgt_made];
    out.elements[made[rp.src_made].h][s].partner = t;
    out.elements[made[rp.tgt_made].h][t].partner = s;
    typename DecomposedComplex<K>::Pair p{made[rp.src_made].h, made[rp.src_made].level, made[rp.tgt_made].level, s, t};
    (p.is_a() ? out.a_pairs : out.e_pairs).push_back(p);
  }
  for (int h : c.degrees()) {
    const int n = c.dim(h);
    SparseMatrix<K> P(n, n);
    int col = 0;
    for (int x : by_degree[h])
      if (g[x].alive) P.set_column(col++, g[x].p);
    for (std::size_t m = 0; m < made.size(); ++m)
      if (made[m].h == h) P.set_column(index_in_degree[m], made[m].p);
    // Inverse by solving P * q_j = e_j.
    SparseMatrix<K> Q(n, n);
    for (int j = 0; j < n; ++j) {
      Vec<K> e(n);
      e.set(j, K(1));
      auto sol = solve(P, e);
      if (!sol) throw std::logic_error("filtered_reduce: change of basis is singular");
      Q.set_column(j, *sol);
    }
    out.to_old.emplace(h, std::move(P));
    out.to_new.emplace(h, std::move(Q));
  }
  return out;
}

/// H^h(C^{>=q}) with the maps j : H^h(C^{>=q}) -> H^h(C) and
/// p : H^h(C^{>=q}) -> H^h(gr_q C) (class of the level-q part).
template <Field K>
struct SublevelHomology {
  int q = 0;
  int h = 0;
  std::vector<Vec<K>> reps;  // cycles of C^{>=q}, in coordinates of C^h
  SparseMatrix<K> j;         // dim H^h(C) x dim H^h(C^{>=q})
  SparseMatrix<K> p;         // dim H^h(gr_q) x dim H^h(C^{>=q})
  HomologyBasis<K> full;     // H^h(C)
  HomologyBasis<K> graded;   // H^h(gr_q C)
  typename FilteredComplex<K>::Restriction graded_piece;

  int dim() const { return static_cast<int>(reps.size()); }
};

template <Field K>
SublevelHomology<K> sublevel_homology(const FilteredComplex<K>& c, int q, int h) {
  SublevelHomology<K> out;
  out.q = q;
  out.h = h;
  auto sub = c.sublevel(q);
  HomologyBasis<K> hs = homology_at(sub.complex, h);
  out.full = homology_at(c, h);
  out.graded_piece = c.graded_piece(q);
  out.graded = homology_at(out.graded_piece.complex, h);
  out.j = SparseMatrix<K>(out.full.dim(), hs.dim());
  out.p = SparseMatrix<K>(out.graded.dim(), hs.dim());
  for (int r = 0; r < hs.dim(); ++r) {
    Vec<K> z = sub.lift(h, hs.representatives()[r], c.dim(h));
    auto jc = out.full.coordinates(z);
    auto pc = out.graded.coordinates(out.graded_piece.project(h, z));
    if (!jc || !pc) throw std::logic_error("sublevel_homology: representative is not a cycle");
    out.j.set_column(r, *jc);
    out.p.set_column(r, *pc);
    out.reps.push_back(std::move(z));
  }
  return out;
}

}  // namespace khs

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "khs/complex.hpp"
#include "khs/scalar.hpp"
#include "khs/sparse_matrix.hpp"

namespace khs {

/// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_sparse(const SparseMatrix<mpz_class>& s) {
    IntMatrix m(s.rows(), s.cols());
    for (int j = 0; j < s.cols(); ++j)
      for (const auto& [i, v] : s.column(j)) m(i, j) = v;
    return m;
  }

  mpz_class& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const mpz_class& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

/// Smith normal form D = U*M*V. invariant_factors are the positive nonzero
/// diagonal entries d1 | d2 | ...; U and V are present when requested.
struct SmithForm {
  std::vector<mpz_class> invariant_factors;
  std::optional<IntMatrix> left;
  std::optional<IntMatrix> right;

  int rank() const { return static_cast<int>(invariant_factors.size()); }
};

namespace detail {

inline int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline bool is_unit(const mpz_class& a) { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }

inline void swap_rows(IntMatrix& a, int i, int k) {
  if (i == k) return;
  for (int j = 0; j < a.cols; ++j) std::swap(a(i, j), a(k, j));
}
inline void swap_cols(IntMatrix& a, int j, int k) {
  if (j == k) return;
  for (int i = 0; i < a.rows; ++i) std::swap(a(i, j), a(i, k));
}
// row_i -= q * row_k
inline void row_submul(IntMatrix& a, int i, int k, const mpz_class& q) {
  for (int j = 0; j < a.cols; ++j)
    if (sgn(a(k, j)) != 0) a(i, j) -= q * a(k, j);
}
// col_j -= q * col_k
inline void col_submul(IntMatrix& a, int j, int k, const mpz_class& q) {
  for (int i = 0; i < a.rows; ++i)
    if (sgn(a(i, k)) != 0) a(i, j) -= q * a(i, k);
}

// Dense Smith reduction in place. Pivot: entry of minimal absolute value,
// ties broken by row-major position.
inline std::vector<mpz_class> dense_smith(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  std::vector<mpz_class> diag;
  const int m = a.rows;
  const int n = a.cols;
  for (int t = 0; t < std::min(m, n); ++t) {
    int pi = -1;
    int pj = -1;
    mpz_class best;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        const mpz_class& x = a(i, j);
        if (sgn(x) == 0) continue;
        if (pi < 0 || cmpabs(x, best) < 0) {
          best = abs(x);
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(a, t, pi);
    if (u) swap_rows(*u, t, pi);
    swap_cols(a, t, pj);
    if (v) swap_cols(*v, t, pj);

    while (true) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_submul(a, i, t, q);
        if (u) row_submul(*u, i, t, q);
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_submul(a, j, t, q);
        if (v) col_submul(*v, j, t, q);
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remaining entry of row/column t onto the pivot.
        int bi = t;
        int bj = t;
        for (int i = t + 1; i < m; ++i)
          if (sgn(a(i, t)) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        for (int j = t + 1; j < n; ++j)
          if (sgn(a(t, j)) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        swap_rows(a, t, bi);
        if (u) swap_rows(*u, t, bi);
        swap_cols(a, t, bj);
        if (v) swap_cols(*v, t, bj);
        continue;
      }
      // Divisibility: fold in a row whose entries the pivot does not divide.
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = 0; j < n; ++j) a(t, j) += a(bad, j);
      if (u)
        for (int j = 0; j < u->cols; ++j) (*u)(t, j) += (*u)(bad, j);
    }
    if (sgn(a(t, t)) < 0) {
      for (int j = 0; j < n; ++j) a(t, j) = -a(t, j);
      if (u)
        for (int j = 0; j < u->cols; ++j) (*u)(t, j) = -(*u)(t, j);
    }
    diag.push_back(a(t, t));
  }
  return diag;
}

}  // namespace detail

/// Smith normal form of an integer matrix.
///
/// Without transforms, unit pivots are first eliminated sparsely; the dense
/// algorithm then runs on what remains.
inline SmithForm smith_normal_form(const SparseMatrix<mpz_class>& m, bool with_transforms = false) {
  SmithForm out;
  if (with_transforms) {
    IntMatrix a = IntMatrix::from_sparse(m);
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    out.invariant_factors = detail::dense_smith(a, &u, &v);
    out.left = std::move(u);
    out.right = std::move(v);
    return out;
  }

  // Sparse phase over rows.
  std::vector<std::map<int, mpz_class>> rows(m.rows());
  std::vector<std::set<int>> col_rows(m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, x] : m.column(j)) {
      rows[i][j] = x;
      col_rows[j].insert(i);
    }
  std::vector<bool> row_alive(m.rows(), true);
  int unit_rank = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < m.rows(); ++r) {
      if (!row_alive[r]) continue;
      int pc = -1;
      std::size_t best = 0;
      for (const auto& [c, x] : rows[r]) {
        if (!detail::is_unit(x)) continue;
        if (pc < 0 || col_rows[c].size() < best) {
          pc = c;
          best = col_rows[c].size();
        }
      }
      if (pc < 0) continue;
      const mpz_class unit = rows[r][pc];
      std::vector<int> others(col_rows[pc].begin(), col_rows[pc].end());
      for (int i : others) {
        if (i == r) continue;
        mpz_class f = rows[i][pc] * unit;  // unit^{-1} == unit
        for (const auto& [c, x] : rows[r]) {
          mpz_class& y = rows[i][c];
          y -= f * x;
          if (sgn(y) == 0) {
            rows[i].erase(c);
            col_rows[c].erase(i);
          } else {
            col_rows[c].insert(i);
          }
        }
      }
      for (const auto& [c, x] : rows[r]) col_rows[c].erase(r);
      rows[r].clear();
      row_alive[r] = false;
      ++unit_rank;
      progress = true;
    }
  }

  std::vector<int> live_rows;
  std::set<int> live_cols;
  for (int r = 0; r < m.rows(); ++r)
    if (row_alive[r] && !rows[r].empty()) {
      live_rows.push_back(r);
      for (const auto& [c, x] : rows[r]) live_cols.insert(c);
    }
  std::map<int, int> col_index;
  for (int c : live_cols) col_index.emplace(c, static_cast<int>(col_index.size()));
  IntMatrix rest(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
  for (std::size_t k = 0; k < live_rows.size(); ++k)
    for (const auto& [c, x] : rows[live_rows[k]]) rest(static_cast<int>(k), col_index[c]) = x;

  out.invariant_factors.assign(unit_rank, mpz_class(1));
  auto tail = detail::dense_smith(rest, nullptr, nullptr);
  out.invariant_factors.insert(out.invariant_factors.end(), tail.begin(), tail.end());
  return out;
}

/// Decomposes n > 1 into prime powers, ascending by prime.
inline std::vector<mpz_class> prime_power_factors(mpz_class n) {
  std::vector<mpz_class> out;
  n = abs(n);
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
    mpz_class pk = 1;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      pk *= p;
    }
    out.push_back(pk);
  }
  if (n > 1) out.push_back(n);
  return out;
}


/// Free rank and torsion of one homology group; torsion orders are prime powers, sorted.
struct IntegralGroup {
  int rank = 0;
  std::vector<mpz_class> torsion;

  int count_torsion(const mpz_class& order) const {
    return static_cast<int>(std::count(torsion.begin(), torsion.end(), order));
  }
  friend bool operator==(const IntegralGroup& a, const IntegralGroup& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
};

/// Integral homology of a complex, degree by degree.
inline std::map<int, IntegralGroup> integral_homology(const FilteredComplex<mpz_class>& c) {
  std::map<int, SmithForm> snf;
  for (int h : c.degrees()) snf.emplace(h, smith_normal_form(c.differential(h)));
  std::map<int, IntegralGroup> out;
  for (int h : c.degrees()) {
    IntegralGroup g;
    g.rank = c.dim(h) - snf.at(h).rank();
    auto prev = snf.find(h - 1);
    if (prev != snf.end()) {
      g.rank -= prev->second.rank();
      for (const auto& d : prev->second.invariant_factors)
        if (d > 1)
          for (auto& pk : prime_power_factors(d)) g.torsion.push_back(pk);
    }
    std::sort(g.torsion.begin(), g.torsion.end());
    out.emplace(h, std::move(g));
  }
  return out;
}

}  // namespace khs

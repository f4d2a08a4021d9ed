#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "khs/scalar.hpp"
#include "khs/sparse_matrix.hpp"
#include "khs/vec.hpp"

namespace khs {

/// Incremental row echelon form over a field.
///
/// Vectors may carry an auxiliary tail at indices >= limit (used for tags that
/// record linear combinations); pivots are only ever taken below `limit`.
/// Every stored row has its pivot at its leading index with coefficient 1.
template <Field K>
class Eliminator {
 public:
  explicit Eliminator(int limit) : limit_(limit), pivot_row_(limit, -1) {}

  int limit() const { return limit_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Subtracts stored rows from v until no pivot position below `limit` is occupied.
  void reduce(Vec<K>& v) const {
    for (int i = v.next(0); i != -1 && i < limit_; i = v.next(i + 1)) {
      int r = pivot_row_[i];
      if (r < 0) continue;
      K c = v.get(i);
      v.axpy(-c, rows_[r]);
    }
  }

  /// Reduces v and stores it if its primary part is nonzero. Returns whether it
  /// was stored; on false, v holds the reduced residue (primary part zero).
  bool insert(Vec<K>& v) {
    reduce(v);
    int lead = v.leading();
    if (lead == -1 || lead >= limit_) return false;
    K inv = ScalarTraits<K>::inverse(v.get(lead));
    v.scale(inv);
    pivot_row_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(v);
    return true;
  }

  /// True when the primary part of v lies in the span of the stored rows.
  bool spans(Vec<K> v) const {
    reduce(v);
    int lead = v.leading();
    return lead == -1 || lead >= limit_;
  }

  const std::vector<Vec<K>>& rows() const { return rows_; }

 private:
  int limit_;
  std::vector<int> pivot_row_;
  std::vector<Vec<K>> rows_;
};

template <Field K>
int rank(std::span<const Vec<K>> vs, int dim) {
  Eliminator<K> e(dim);
  for (Vec<K> v : vs) e.insert(v);
  return e.rank();
}

template <Field K>
int rank(const SparseMatrix<K>& m) {
  Eliminator<K> e(m.rows());
  for (int j = 0; j < m.cols(); ++j) {
    Vec<K> v = m.column_vec(j);
    e.insert(v);
  }
  return e.rank();
}

/// Basis of the null space of m, as vectors of dimension m.cols().
template <Field K>
std::vector<Vec<K>> kernel(const SparseMatrix<K>& m) {
  const int n = m.rows();
  const int c = m.cols();
  Eliminator<K> e(n);
  std::vector<Vec<K>> out;
  for (int j = 0; j < c; ++j) {
    Vec<K> v = embed(m.column_vec(j), n + c);
    v.set(n + j, K(1));
    if (!e.insert(v)) out.push_back(slice(v, n, n + c));
  }
  return out;
}

/// Some x with m*x = b, or nullopt when b is not in the column space.
template <Field K>
std::optional<Vec<K>> solve(const SparseMatrix<K>& m, const Vec<K>& b) {
  const int n = m.rows();
  const int c = m.cols();
  if (b.dim() != n) throw std::invalid_argument("solve: dimension mismatch");
  Eliminator<K> e(n);
  for (int j = 0; j < c; ++j) {
    Vec<K> v = embed(m.column_vec(j), n + c);
    v.set(n + j, K(1));
    e.insert(v);
  }
  Vec<K> r = embed(b, n + c);
  e.reduce(r);
  int lead = r.leading();
  if (lead != -1 && lead < n) return std::nullopt;
  Vec<K> x = slice(r, n, n + c);
  x.scale(K(-1));
  return x;
}

/// Homology of C^{h-1} -> C^h -> C^{h+1} at C^h over a field, with cycle
/// representatives and a coordinate map for cycles.
template <Field K>
class HomologyBasis {
 public:
  HomologyBasis() : echelon_(0) {}

  /// d_in: images in C^h of the generators of C^{h-1}; d_out: C^h -> C^{h+1}.
  HomologyBasis(int n, std::span<const Vec<K>> d_in, const SparseMatrix<K>& d_out) : n_(n), echelon_(0) {
    if (d_out.cols() != n) throw std::invalid_argument("HomologyBasis: d_out has wrong source dimension");
    std::vector<Vec<K>> cycles = kernel(d_out);
    const int total = n + static_cast<int>(cycles.size());
    echelon_ = Eliminator<K>(n);
    for (const Vec<K>& b : d_in) {
      if (b.dim() != n) throw std::invalid_argument("HomologyBasis: d_in has wrong target dimension");
      Vec<K> v = embed(b, total);
      echelon_.insert(v);
    }
    boundary_rank_ = echelon_.rank();
    for (const Vec<K>& z : cycles) {
      Vec<K> v = embed(z, total);
      if (echelon_.spans(v)) continue;
      v.set(n + static_cast<int>(reps_.size()), K(1));
      reps_.push_back(z);
      echelon_.insert(v);
    }
    total_ = total;
  }

  int dim() const { return static_cast<int>(reps_.size()); }
  int chain_dim() const { return n_; }
  int boundary_rank() const { return boundary_rank_; }
  const std::vector<Vec<K>>& representatives() const { return reps_; }

  /// Coordinates of the class of `cycle` in the representative basis, or nullopt
  /// if `cycle` is not a cycle.
  std::optional<Vec<K>> coordinates(const Vec<K>& cycle) const {
    if (cycle.dim() != n_) throw std::invalid_argument("HomologyBasis::coordinates: dimension mismatch");
    Vec<K> v = embed(cycle, total_);
    echelon_.reduce(v);
    int lead = v.leading();
    if (lead != -1 && lead < n_) return std::nullopt;
    Vec<K> c = slice(v, n_, n_ + dim());
    c.scale(K(-1));
    return c;
  }

  bool is_boundary(const Vec<K>& cycle) const {
    auto c = coordinates(cycle);
    return c && c->is_zero();
  }

 private:
  int n_ = 0;
  int total_ = 0;
  int boundary_rank_ = 0;
  Eliminator<K> echelon_;
  std::vector<Vec<K>> reps_;
};

}  // namespace khs

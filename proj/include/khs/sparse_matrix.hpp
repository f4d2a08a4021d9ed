#pragma once

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "khs/scalar.hpp"
#include "khs/vec.hpp"

namespace khs {

/// Column-major sparse matrix. Column j is the image of basis vector j.
template <class K>
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<int, K>>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static constexpr RingKind ring() { return ScalarTraits<K>::ring; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Column& column(int j) const { return columns_[j]; }

  /// Replaces column j; entries are sorted and zero entries dropped.
  void set_column(int j, Column col) {
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Column merged;
    for (auto& [i, v] : col) {
      if (i < 0 || i >= rows_) throw std::out_of_range("SparseMatrix: row index out of range");
      if (!merged.empty() && merged.back().first == i) merged.back().second += v;
      else merged.emplace_back(i, v);
    }
    std::erase_if(merged, [](const auto& e) { return ScalarTraits<K>::is_zero(e.second); });
    columns_[j] = std::move(merged);
  }

  void set_column(int j, const Vec<K>& v) {
    Column col;
    v.for_each([&](int i, const K& x) { col.emplace_back(i, x); });
    columns_[j] = std::move(col);
  }

  Vec<K> column_vec(int j) const {
    Vec<K> v(rows_);
    for (const auto& [i, x] : columns_[j]) v.set(i, x);
    return v;
  }

  std::vector<Vec<K>> column_vecs() const {
    std::vector<Vec<K>> out;
    out.reserve(cols_);
    for (int j = 0; j < cols_; ++j) out.push_back(column_vec(j));
    return out;
  }

  K at(int i, int j) const {
    for (const auto& [r, x] : columns_[j])
      if (r == i) return x;
    return K(0);
  }

  Vec<K> apply(const Vec<K>& x) const {
    if (x.dim() != cols_) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    Vec<K> y(rows_);
    x.for_each([&](int j, const K& c) {
      for (const auto& [i, v] : columns_[j]) y.add(i, c * v);
    });
    return y;
  }

  long nnz() const {
    long n = 0;
    for (const auto& c : columns_) n += static_cast<long>(c.size());
    return n;
  }

  std::vector<std::tuple<int, int, K>> triplets() const {
    std::vector<std::tuple<int, int, K>> out;
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) out.emplace_back(i, j, v);
    return out;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Column> columns_;
};

/// Product A*B.
template <class K>
SparseMatrix<K> multiply(const SparseMatrix<K>& a, const SparseMatrix<K>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  SparseMatrix<K> out(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) out.set_column(j, a.apply(b.column_vec(j)));
  return out;
}

/// Entrywise ring conversion through the rationals.
template <class To, class From>
SparseMatrix<To> convert(const SparseMatrix<From>& m) {
  SparseMatrix<To> out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    typename SparseMatrix<To>::Column col;
    for (const auto& [i, v] : m.column(j))
      col.emplace_back(i, ScalarTraits<To>::from_rational(ScalarTraits<From>::to_rational(v)));
    out.set_column(j, std::move(col));
  }
  return out;
}

template <class To, class From>
Vec<To> convert(const Vec<From>& v) {
  Vec<To> out(v.dim());
  v.for_each([&](int i, const From& x) {
    out.set(i, ScalarTraits<To>::from_rational(ScalarTraits<From>::to_rational(x)));
  });
  return out;
}

/// Reduction of an integer matrix modulo 2.
inline SparseMatrix<F2> mod2(const SparseMatrix<mpz_class>& m) {
  SparseMatrix<F2> out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    SparseMatrix<F2>::Column col;
    for (const auto& [i, v] : m.column(j))
      if (mpz_odd_p(v.get_mpz_t())) col.emplace_back(i, F2(1));
    out.set_column(j, std::move(col));
  }
  return out;
}

}  // namespace khs

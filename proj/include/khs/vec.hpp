#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "khs/scalar.hpp"

namespace khs {

/// Vector over a ring K with a fixed ambient dimension.
///
/// The generic version stores sorted (index, value) pairs; the F2
/// specialization is bit-packed. Both expose the same small interface used by
/// the elimination code: next(), get(), axpy(), scale().
template <class K>
class Vec {
 public:
  using Entry = std::pair<int, K>;

  Vec() = default;
  explicit Vec(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool is_zero() const { return entries_.empty(); }
  int nnz() const { return static_cast<int>(entries_.size()); }
  int leading() const { return entries_.empty() ? -1 : entries_.front().first; }

  /// Smallest index >= from holding a nonzero entry, or -1.
  int next(int from) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), from,
                               [](const Entry& e, int i) { return e.first < i; });
    return it == entries_.end() ? -1 : it->first;
  }

  K get(int i) const {
    auto it = find(i);
    return (it != entries_.end() && it->first == i) ? it->second : K(0);
  }

  void set(int i, const K& v) {
    assert(i >= 0 && i < dim_);
    auto it = find(i);
    bool present = it != entries_.end() && it->first == i;
    if (is_zero_scalar(v)) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      entries_.insert(it, Entry{i, v});
    }
  }

  void add(int i, const K& v) {
    if (is_zero_scalar(v)) return;
    auto it = find(i);
    if (it != entries_.end() && it->first == i) {
      it->second += v;
      if (is_zero_scalar(it->second)) entries_.erase(it);
    } else {
      entries_.insert(it, Entry{i, v});
    }
  }

  /// this += a * x
  void axpy(const K& a, const Vec& x) {
    if (is_zero_scalar(a) || x.entries_.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto p = entries_.begin();
    auto q = x.entries_.begin();
    while (p != entries_.end() || q != x.entries_.end()) {
      if (q == x.entries_.end() || (p != entries_.end() && p->first < q->first)) {
        out.push_back(std::move(*p));
        ++p;
      } else if (p == entries_.end() || q->first < p->first) {
        out.emplace_back(q->first, a * q->second);
        ++q;
      } else {
        K v = p->second + a * q->second;
        if (!is_zero_scalar(v)) out.emplace_back(p->first, std::move(v));
        ++p;
        ++q;
      }
    }
    entries_ = std::move(out);
  }

  void scale(const K& a) {
    if (is_zero_scalar(a)) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second *= a;
  }

  /// Drops entries at indices >= d and sets the dimension.
  void resize(int d) {
    while (!entries_.empty() && entries_.back().first >= d) entries_.pop_back();
    dim_ = d;
  }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& e : entries_) f(e.first, e.second);
  }

  friend bool operator==(const Vec& a, const Vec& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  static bool is_zero_scalar(const K& v) { return ScalarTraits<K>::is_zero(v); }
  typename std::vector<Entry>::iterator find(int i) {
    return std::lower_bound(entries_.begin(), entries_.end(), i,
                            [](const Entry& e, int j) { return e.first < j; });
  }
  typename std::vector<Entry>::const_iterator find(int i) const {
    return std::lower_bound(entries_.begin(), entries_.end(), i,
                            [](const Entry& e, int j) { return e.first < j; });
  }

  int dim_ = 0;
  std::vector<Entry> entries_;
};

template <>
class Vec<F2> {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

  int dim() const { return dim_; }
  bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
  }
  int nnz() const {
    int n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
  }
  int leading() const { return next(0); }

  int next(int from) const {
    if (from < 0) from = 0;
    if (from >= dim_) return -1;
    std::size_t w = static_cast<std::size_t>(from) / 64;
    uint64_t cur = words_[w] & (~uint64_t{0} << (from % 64));
    while (true) {
      if (cur != 0) return static_cast<int>(w * 64 + std::countr_zero(cur));
      if (++w >= words_.size()) return -1;
      cur = words_[w];
    }
  }

  F2 get(int i) const { return F2::from_bit((words_[i / 64] >> (i % 64)) & 1U); }
  void set(int i, F2 v) {
    assert(i >= 0 && i < dim_);
    uint64_t mask = uint64_t{1} << (i % 64);
    if (v.bit) words_[i / 64] |= mask;
    else words_[i / 64] &= ~mask;
  }
  void add(int i, F2 v) {
    if (v.bit) words_[i / 64] ^= uint64_t{1} << (i % 64);
  }
  void axpy(F2 a, const Vec& x) {
    if (!a.bit) return;
    assert(x.words_.size() <= words_.size());
    for (std::size_t k = 0; k < x.words_.size(); ++k) words_[k] ^= x.words_[k];
  }
  void scale(F2 a) {
    if (!a.bit) std::fill(words_.begin(), words_.end(), 0);
  }
  void resize(int d) {
    words_.resize((d + 63) / 64, 0);
    if (d % 64 != 0 && !words_.empty()) words_.back() &= (uint64_t{1} << (d % 64)) - 1;
    dim_ = d;
  }
  template <class F>
  void for_each(F&& f) const {
    for (int i = next(0); i != -1; i = next(i + 1)) f(i, F2(1));
  }
  friend bool operator==(const Vec& a, const Vec& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_;
  }

 private:
  int dim_ = 0;
  std::vector<uint64_t> words_;
};

/// Copy of `v` as a vector over another ambient dimension, shifting indices by `offset`.
template <class K>
Vec<K> embed(const Vec<K>& v, int dim, int offset = 0) {
  Vec<K> out(dim);
  v.for_each([&](int i, const K& x) { out.set(i + offset, x); });
  return out;
}

/// Entries of v whose index lies in [lo, hi), re-based at 0.
template <class K>
Vec<K> slice(const Vec<K>& v, int lo, int hi) {
  Vec<K> out(hi - lo);
  for (int i = v.next(lo); i != -1 && i < hi; i = v.next(i + 1)) out.set(i - lo, v.get(i));
  return out;
}

}  // namespace khs

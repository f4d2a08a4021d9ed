#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "khs/linalg.hpp"
#include "khs/scalar.hpp"
#include "khs/sparse_matrix.hpp"
#include "khs/vec.hpp"

namespace khs {

/// Finite free cochain complex with a filtration level on every generator.
///
/// Generators are grouped by homological degree; within a degree they are
/// addressed by a local index. differential(h) maps C^h to C^{h+1} and has
/// dim(h+1) rows. Each generator also carries a global id, which survives
/// restriction and reduction so that chains can be reported stably.
template <class K>
class FilteredComplex {
 public:
  struct Generator {
    int h;
    int q;
    int id;
  };

  FilteredComplex() = default;

  static constexpr RingKind ring() { return ScalarTraits<K>::ring; }

  /// Adds degree h with the given levels. Ids default to consecutive values
  /// after the largest id used so far.
  void add_degree(int h, std::vector<int> levels, std::vector<int> ids = {}) {
    if (degrees_.count(h)) throw std::invalid_argument("FilteredComplex: degree added twice");
    if (ids.empty()) {
      ids.resize(levels.size());
      for (auto& i : ids) i = next_id_++;
    } else if (ids.size() != levels.size()) {
      throw std::invalid_argument("FilteredComplex: ids and levels differ in length");
    }
    for (int i : ids) next_id_ = std::max(next_id_, i + 1);
    const int n = static_cast<int>(levels.size());
    Degree& deg = degrees_[h];
    deg.levels = std::move(levels);
    deg.ids = std::move(ids);
    deg.d = SparseMatrix<K>(dim(h + 1), n);
    auto prev = degrees_.find(h - 1);
    if (prev != degrees_.end() && prev->second.d.is_zero())
      prev->second.d = SparseMatrix<K>(n, static_cast<int>(prev->second.levels.size()));
  }

  void set_differential(int h, SparseMatrix<K> d) {
    auto it = degrees_.find(h);
    if (it == degrees_.end()) {
      if (d.cols() != 0 || !d.is_zero()) throw std::invalid_argument("FilteredComplex: differential from a missing degree");
      return;
    }
    if (d.cols() != dim(h) || d.rows() != dim(h + 1))
      throw std::invalid_argument("FilteredComplex: differential has wrong shape");
    it->second.d = std::move(d);
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [h, deg] : degrees_) out.push_back(h);
    return out;
  }
  bool empty() const { return total_dim() == 0; }
  int dim(int h) const {
    auto it = degrees_.find(h);
    return it == degrees_.end() ? 0 : static_cast<int>(it->second.levels.size());
  }
  int total_dim() const {
    int n = 0;
    for (const auto& [h, deg] : degrees_) n += static_cast<int>(deg.levels.size());
    return n;
  }
  const std::vector<int>& levels(int h) const {
    auto it = degrees_.find(h);
    return it == degrees_.end() ? empty_ : it->second.levels;
  }
  const std::vector<int>& ids(int h) const {
    auto it = degrees_.find(h);
    return it == degrees_.end() ? empty_ : it->second.ids;
  }
  int level(int h, int i) const { return levels(h)[i]; }

  /// Local index in degree h of the generator with global id `id`, or -1.
  int index_of(int h, int id) const {
    const auto& v = ids(h);
    auto it = std::find(v.begin(), v.end(), id);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  }

  const SparseMatrix<K>& differential(int h) const {
    auto it = degrees_.find(h);
    if (it == degrees_.end()) return empty_matrix_;
    return it->second.d;
  }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (const auto& [h, deg] : degrees_)
      for (std::size_t i = 0; i < deg.levels.size(); ++i) out.push_back({h, deg.levels[i], deg.ids[i]});
    return out;
  }

  /// Smallest and largest level in degree h (or over all degrees when h is
  /// absent from the complex, returns {0, -1}).
  std::pair<int, int> level_range(int h) const {
    const auto& lv = levels(h);
    if (lv.empty()) return {0, -1};
    auto [lo, hi] = std::minmax_element(lv.begin(), lv.end());
    return {*lo, *hi};
  }

  /// Subcomplex-or-quotient obtained by keeping the generators whose level
  /// satisfies `keep`; differential entries into dropped generators are
  /// discarded. With keep = (level >= q) this is the sublevel subcomplex, with
  /// keep = (level == q) it is the associated graded piece.
  struct Restriction;
  Restriction restrict_levels(const std::function<bool(int)>& keep) const;

  Restriction sublevel(int q) const {
    return restrict_levels([q](int l) { return l >= q; });
  }
  Restriction graded_piece(int q) const {
    return restrict_levels([q](int l) { return l == q; });
  }

  bool d_squared_zero() const {
    for (const auto& [h, deg] : degrees_) {
      auto next = degrees_.find(h + 1);
      if (next == degrees_.end()) continue;
      if (!multiply(next->second.d, deg.d).is_zero()) return false;
    }
    return true;
  }

  /// Every entry connects level q to a level >= q.
  bool filtration_monotone() const {
    return check_levels([](int from, int to) { return to >= from; });
  }
  /// Every entry preserves the level exactly.
  bool level_preserving() const {
    return check_levels([](int from, int to) { return to == from; });
  }

  /// Level jumps (target - source) of the differential, one per entry.
  template <class F>
  void for_each_entry(F&& f) const {
    for (const auto& [h, deg] : degrees_) {
      if (!degrees_.count(h + 1)) continue;
      const auto& target = degrees_.at(h + 1).levels;
      for (int j = 0; j < deg.d.cols(); ++j)
        for (const auto& [i, x] : deg.d.column(j)) f(h, j, i, x, deg.levels[j], target[i]);
    }
  }

 private:
  struct Degree {
    std::vector<int> levels;
    std::vector<int> ids;
    SparseMatrix<K> d;
  };

  template <class P>
  bool check_levels(P ok) const {
    bool good = true;
    for_each_entry([&](int, int, int, const K&, int from, int to) {
      if (!ok(from, to)) good = false;
    });
    return good;
  }

  std::map<int, Degree> degrees_;
  int next_id_ = 0;
  inline static const std::vector<int> empty_{};
  inline static const SparseMatrix<K> empty_matrix_{};
};

template <class K>
struct FilteredComplex<K>::Restriction {
  FilteredComplex<K> complex;
  /// index[h][i] = local index in the parent of generator i of degree h.
  std::map<int, std::vector<int>> index;

  /// Embeds a chain of the restriction into the parent degree h.
  Vec<K> lift(int h, const Vec<K>& v, int parent_dim) const {
    Vec<K> out(parent_dim);
    const auto& idx = index.at(h);
    v.for_each([&](int i, const K& x) { out.set(idx[i], x); });
    return out;
  }
  /// Restricts a parent chain to the kept generators (other entries dropped).
  Vec<K> project(int h, const Vec<K>& v) const {
    auto it = index.find(h);
    if (it == index.end()) return Vec<K>(0);
    Vec<K> out(static_cast<int>(it->second.size()));
    for (std::size_t i = 0; i < it->second.size(); ++i) out.set(static_cast<int>(i), v.get(it->second[i]));
    return out;
  }
};

template <class K>
typename FilteredComplex<K>::Restriction FilteredComplex<K>::restrict_levels(const std::function<bool(int)>& keep) const {
  Restriction r;
  std::map<int, std::vector<int>> back;  // parent index -> new index (or -1)
  for (const auto& [h, deg] : degrees_) {
    std::vector<int> lv, id, idx;
    std::vector<int>& b = back[h];
    b.assign(deg.levels.size(), -1);
    for (std::size_t i = 0; i < deg.levels.size(); ++i) {
      if (!keep(deg.levels[i])) continue;
      b[i] = static_cast<int>(lv.size());
      lv.push_back(deg.levels[i]);
      id.push_back(deg.ids[i]);
      idx.push_back(static_cast<int>(i));
    }
    r.index[h] = idx;
    std::vector<int> ids_copy = id;
    r.complex.degrees_[h] = Degree{std::move(lv), std::move(ids_copy), {}};
  }
  r.complex.next_id_ = next_id_;
  for (auto& [h, deg] : r.complex.degrees_) {
    const int n = static_cast<int>(deg.levels.size());
    const int m = r.complex.dim(h + 1);
    SparseMatrix<K> d(m, n);
    if (m > 0) {
      const auto& parent = degrees_.at(h).d;
      const auto& bt = back.at(h + 1);
      const auto& idx = r.index.at(h);
      for (int j = 0; j < n; ++j) {
        typename SparseMatrix<K>::Column col;
        for (const auto& [i, x] : parent.column(idx[j]))
          if (bt[i] >= 0) col.emplace_back(bt[i], x);
        d.set_column(j, std::move(col));
      }
    }
    deg.d = std::move(d);
  }
  return r;
}

/// Entrywise ring conversion of a complex (through the rationals).
template <class To, class From>
FilteredComplex<To> convert_complex(const FilteredComplex<From>& c) {
  FilteredComplex<To> out;
  for (int h : c.degrees()) out.add_degree(h, c.levels(h), c.ids(h));
  for (int h : c.degrees()) out.set_differential(h, convert<To>(c.differential(h)));
  return out;
}

inline FilteredComplex<F2> mod2(const FilteredComplex<mpz_class>& c) {
  FilteredComplex<F2> out;
  for (int h : c.degrees()) out.add_degree(h, c.levels(h), c.ids(h));
  for (int h : c.degrees()) out.set_differential(h, mod2(c.differential(h)));
  return out;
}

/// Homology over a field, degree by degree.
template <Field K>
struct FieldHomology {
  std::map<int, HomologyBasis<K>> degrees;

  int dim(int h) const {
    auto it = degrees.find(h);
    return it == degrees.end() ? 0 : it->second.dim();
  }
  const HomologyBasis<K>& at(int h) const {
    static const HomologyBasis<K> none;
    auto it = degrees.find(h);
    return it == degrees.end() ? none : it->second;
  }
};

template <Field K>
HomologyBasis<K> homology_at(const FilteredComplex<K>& c, int h) {
  if (c.dim(h) == 0) return HomologyBasis<K>();
  std::vector<Vec<K>> in = c.differential(h - 1).column_vecs();
  return HomologyBasis<K>(c.dim(h), in, c.differential(h));
}

template <Field K>
FieldHomology<K> homology_field(const FilteredComplex<K>& c) {
  FieldHomology<K> out;
  for (int h : c.degrees()) out.degrees.emplace(h, homology_at(c, h));
  return out;
}

}  // namespace khs

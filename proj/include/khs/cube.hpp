#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "khs/complex.hpp"
#include "khs/link.hpp"
#include "khs/resolution.hpp"

namespace khs {

enum class FrobeniusKind { Khovanov, Lee, BarNatan };

inline std::string to_string(FrobeniusKind k) {
  switch (k) {
    case FrobeniusKind::Khovanov: return "khovanov";
    case FrobeniusKind::Lee: return "lee";
    case FrobeniusKind::BarNatan: return "bar-natan";
  }
  return "?";
}

/// Deformation jump in q of the non-Khovanov part of the differential.
inline int deformation_jump(FrobeniusKind k) {
  return k == FrobeniusKind::Lee ? 4 : (k == FrobeniusKind::BarNatan ? 2 : 0);
}

inline constexpr int kMaxCubeCrossings = 20;

/// Indexing of the cube of resolutions.
///
/// Generators are ordered by homological degree, then vertex (ascending as an
/// integer), then labeling L (bit i of L set means circle i carries x). The
/// F2, Z and Q complexes built from the same diagram share this order.
class Cube {
 public:
  explicit Cube(const OrientedLinkDiagram& d) : diagram_(d), arcs_(d) {
    n_ = d.crossing_count();
    if (n_ > kMaxCubeCrossings) throw std::invalid_argument("cube: too many crossings");
    n_plus_ = d.n_plus();
    n_minus_ = d.n_minus();
    if (d.empty()) return;
    const std::uint64_t nv = std::uint64_t{1} << n_;
    smooth_.reserve(nv);
    for (std::uint64_t v = 0; v < nv; ++v) smooth_.push_back(smooth(arcs_, v));
    offset_.assign(nv, 0);
    for (std::uint64_t v = 0; v < nv; ++v) {
      const int h = degree(v);
      offset_[v] = dim_[h];
      dim_[h] += 1 << smooth_[v].circle_count;
      by_degree_[h].push_back(v);
    }
    int total = 0;
    for (const auto& [h, n] : dim_) {
      id_base_[h] = total;
      total += n;
    }
  }

  const OrientedLinkDiagram& diagram() const { return diagram_; }
  const CrossingArcs& arcs() const { return arcs_; }
  int crossings() const { return n_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }

  int degree(std::uint64_t v) const { return std::popcount(v) - n_minus_; }
  const Smoothing& smoothing(std::uint64_t v) const { return smooth_[v]; }
  int circles(std::uint64_t v) const { return smooth_[v].circle_count; }

  /// Local index (within its degree) of generator (v, L).
  int local_index(std::uint64_t v, std::uint32_t L) const { return offset_[v] + static_cast<int>(L); }
  int global_id(std::uint64_t v, std::uint32_t L) const { return id_base_.at(degree(v)) + local_index(v, L); }
  int level(std::uint64_t v, std::uint32_t L) const {
    const int c = circles(v);
    return (c - 2 * std::popcount(L)) + std::popcount(v) + n_plus_ - 2 * n_minus_;
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [h, n] : dim_) out.push_back(h);
    return out;
  }
  int dim(int h) const {
    auto it = dim_.find(h);
    return it == dim_.end() ? 0 : it->second;
  }
  const std::vector<std::uint64_t>& vertices(int h) const {
    static const std::vector<std::uint64_t> none;
    auto it = by_degree_.find(h);
    return it == by_degree_.end() ? none : it->second;
  }

  /// Levels of degree h in generator order.
  std::vector<int> levels(int h) const {
    std::vector<int> out;
    out.reserve(dim(h));
    for (auto v : vertices(h))
      for (std::uint32_t L = 0; L < (1U << circles(v)); ++L) out.push_back(level(v, L));
    return out;
  }
  std::vector<int> ids(int h) const {
    std::vector<int> out(dim(h));
    const int base = id_base_.count(h) ? id_base_.at(h) : 0;
    for (int i = 0; i < dim(h); ++i) out[i] = base + i;
    return out;
  }

  /// Generator (v, L) with the given global id.
  std::pair<std::uint64_t, std::uint32_t> generator(int id) const {
    for (const auto& [h, base] : id_base_) {
      if (id < base || id >= base + dim(h)) continue;
      const int local = id - base;
      const auto& vs = vertices(h);
      auto it = std::upper_bound(vs.begin(), vs.end(), local,
                                 [&](int x, std::uint64_t v) { return x < offset_[v]; });
      --it;
      return {*it, static_cast<std::uint32_t>(local - offset_[*it])};
    }
    throw std::out_of_range("cube: generator id out of range");
  }

 private:
  OrientedLinkDiagram diagram_;
  CrossingArcs arcs_;
  int n_ = 0;
  int n_plus_ = 0;
  int n_minus_ = 0;
  std::vector<Smoothing> smooth_;
  std::vector<int> offset_;
  std::map<int, int> dim_;
  std::map<int, int> id_base_;
  std::map<int, std::vector<std::uint64_t>> by_degree_;
};

namespace detail {

/// One term of an edge map: target labeling and coefficient.
struct EdgeTerm {
  std::uint32_t label;
  int coeff;
};

/// Edge map of the cube from vertex v along crossing k (bit k of v clear).
/// Returns the terms of d(v, L) at vertex v | 2^k, without the edge sign.
class EdgeMap {
 public:
  EdgeMap(const Cube& cube, std::uint64_t v, int k, FrobeniusKind kind) : kind_(kind) {
    const auto& a = cube.arcs().idx[k];
    const auto& s = cube.smoothing(v);
    const std::uint64_t w = v | (std::uint64_t{1} << k);
    const auto& t = cube.smoothing(w);
    const int nc = s.circle_count;
    // Representative arc of each source circle.
    std::vector<int> rep(nc, -1);
    for (int i = 0; i < static_cast<int>(s.circle_of_arc.size()); ++i)
      if (rep[s.circle_of_arc[i]] < 0) rep[s.circle_of_arc[i]] = i;
    ca_ = s.circle_of_arc[a[0]];
    cb_ = s.circle_of_arc[a[2]];
    merge_ = ca_ != cb_;
    if (merge_) {
      t0_ = t.circle_of_arc[a[0]];
    } else {
      t0_ = t.circle_of_arc[a[0]];
      t1_ = t.circle_of_arc[a[1]];
    }
    for (int i = 0; i < nc; ++i) {
      if (i == ca_ || i == cb_) continue;
      others_.emplace_back(i, t.circle_of_arc[rep[i]]);
    }
  }

  template <class F>
  void apply(std::uint32_t L, F&& emit) const {
    std::uint32_t base = 0;
    for (const auto& [src, dst] : others_)
      if ((L >> src) & 1U) base |= 1U << dst;
    if (merge_) {
      const bool xa = (L >> ca_) & 1U;
      const bool xb = (L >> cb_) & 1U;
      const std::uint32_t x = 1U << t0_;
      if (!xa && !xb) {
        emit(base, 1);
      } else if (xa != xb) {
        emit(base | x, 1);
      } else {
        if (kind_ == FrobeniusKind::Lee) emit(base, 1);
        else if (kind_ == FrobeniusKind::BarNatan) emit(base | x, 1);
      }
    } else {
      const bool xa = (L >> ca_) & 1U;
      const std::uint32_t x0 = 1U << t0_;
      const std::uint32_t x1 = 1U << t1_;
      if (!xa) {
        emit(base | x1, 1);
        emit(base | x0, 1);
        if (kind_ == FrobeniusKind::BarNatan) emit(base, -1);
      } else {
        emit(base | x0 | x1, 1);
        if (kind_ == FrobeniusKind::Lee) emit(base, 1);
      }
    }
  }

 private:
  FrobeniusKind kind_;
  int ca_ = -1;
  int cb_ = -1;
  int t0_ = -1;
  int t1_ = -1;
  bool merge_ = false;
  std::vector<std::pair<int, int>> others_;
};

inline int edge_sign(std::uint64_t v, int k) {
  return (std::popcount(v & ((std::uint64_t{1} << k) - 1)) % 2 == 0) ? 1 : -1;
}

template <class K>
void check_kind(FrobeniusKind kind) {
  if (kind == FrobeniusKind::Lee && ScalarTraits<K>::ring == RingKind::F2)
    throw std::invalid_argument("Lee deformation requires characteristic other than 2");
}

}  // namespace detail

/// Khovanov complex of the cube, or its Lee / Bar-Natan deformation.
template <class K>
FilteredComplex<K> build_complex(const Cube& cube, FrobeniusKind kind) {
  detail::check_kind<K>(kind);
  FilteredComplex<K> c;
  for (int h : cube.degrees()) c.add_degree(h, cube.levels(h), cube.ids(h));
  for (int h : cube.degrees()) {
    if (cube.dim(h + 1) == 0) continue;
    SparseMatrix<K> d(cube.dim(h + 1), cube.dim(h));
    for (auto v : cube.vertices(h)) {
      std::vector<detail::EdgeMap> maps;
      std::vector<int> ks;
      for (int k = 0; k < cube.crossings(); ++k)
        if (!((v >> k) & 1U)) {
          maps.emplace_back(cube, v, k, kind);
          ks.push_back(k);
        }
      for (std::uint32_t L = 0; L < (1U << cube.circles(v)); ++L) {
        typename SparseMatrix<K>::Column col;
        for (std::size_t e = 0; e < maps.size(); ++e) {
          const int k = ks[e];
          const std::uint64_t w = v | (std::uint64_t{1} << k);
          const int sign = detail::edge_sign(v, k);
          maps[e].apply(L, [&](std::uint32_t L2, int coeff) {
            col.emplace_back(cube.local_index(w, L2), ScalarTraits<K>::from_int(sign * coeff));
          });
        }
        d.set_column(cube.local_index(v, L), std::move(col));
      }
    }
    c.set_differential(h, std::move(d));
  }
  return c;
}

template <class K>
FilteredComplex<K> build_complex(const OrientedLinkDiagram& d, FrobeniusKind kind) {
  return build_complex<K>(Cube(d), kind);
}

/// Chain at the oriented resolution of an orientation of the diagram.
template <class K>
struct CanonicalGenerator {
  std::vector<bool> reversed;  // orientation flags, relative to the reference
  int degree = 0;
  std::uint64_t vertex = 0;
  std::vector<int> circle_labels;  // 0 = first idempotent-type label, 1 = second
  Vec<K> chain;                    // coordinates in degree `degree`
};

/// Canonical (Lee / Bar-Natan) generator for the orientation `reversed` of
/// the cube's diagram. Over Lee: labels x+1 and x-1; over Bar-Natan: 1-x and x.
template <class K>
CanonicalGenerator<K> canonical_generator(const Cube& cube, FrobeniusKind kind, const std::vector<bool>& reversed) {
  if (kind == FrobeniusKind::Khovanov) throw std::invalid_argument("canonical generators need a Lee or Bar-Natan deformation");
  detail::check_kind<K>(kind);
  const auto& d = cube.diagram();
  if (d.empty()) throw std::invalid_argument("canonical generators of the empty link");
  const OrientedLinkDiagram oriented = d.with_reversed(reversed);
  const OrientedResolution res = oriented_resolution(oriented);
  CanonicalGenerator<K> g;
  g.reversed = reversed;
  g.vertex = res.vertex;
  g.degree = cube.degree(res.vertex);
  const int nc = static_cast<int>(res.circles.size());
  if (nc != cube.circles(res.vertex)) throw std::logic_error("canonical generator: circle count mismatch");
  for (const auto& c : res.circles) g.circle_labels.push_back(c.label);
  // Coefficients (on 1, on x) of the two labels.
  int one[2], ex[2];
  if (kind == FrobeniusKind::Lee) {
    one[0] = 1; ex[0] = 1;   // x + 1
    one[1] = -1; ex[1] = 1;  // x - 1
  } else {
    one[0] = 1; ex[0] = -1;  // 1 - x
    one[1] = 0; ex[1] = 1;   // x
  }
  g.chain = Vec<K>(cube.dim(g.degree));
  for (std::uint32_t L = 0; L < (1U << nc); ++L) {
    long c = 1;
    for (int i = 0; i < nc && c != 0; ++i) c *= ((L >> i) & 1U) ? ex[g.circle_labels[i]] : one[g.circle_labels[i]];
    if (c != 0) g.chain.set(cube.local_index(res.vertex, L), ScalarTraits<K>::from_int(c));
  }
  return g;
}

/// The pair (s_o, s_o-bar) for the diagram's own orientation, after checking
/// that both are cycles of `complex`.
template <class K>
std::pair<CanonicalGenerator<K>, CanonicalGenerator<K>> canonical_pair(const Cube& cube, FrobeniusKind kind,
                                                                       const FilteredComplex<K>& complex) {
  std::vector<bool> o = cube.diagram().reversed();
  std::vector<bool> ob = o;
  ob.flip();
  auto a = canonical_generator<K>(cube, kind, o);
  auto b = canonical_generator<K>(cube, kind, ob);
  for (const auto* g : {&a, &b})
    if (!complex.differential(g->degree).apply(g->chain).is_zero())
      throw std::logic_error("canonical generator is not a cycle");
  return {std::move(a), std::move(b)};
}

}  // namespace khs

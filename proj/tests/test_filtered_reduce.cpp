#include <gtest/gtest.h>

#include <random>

#include "khs/khs.hpp"
#include "test_util.hpp"

using namespace khs;

namespace {

template <class K>
FilteredComplex<K> two_term(int ls, int lt, bool connect) {
  FilteredComplex<K> c;
  c.add_degree(0, {ls});
  c.add_degree(1, {lt});
  SparseMatrix<K> d(1, 1);
  if (connect) {
    Vec<K> col(1);
    col.set(0, K(1));
    d.set_column(0, col);
  }
  c.set_differential(0, d);
  c.set_differential(1, SparseMatrix<K>(0, 1));
  return c;
}

template <class K>
std::multiset<std::tuple<int, int, int>> bars_of(const DecomposedComplex<K>& r) {
  std::multiset<std::tuple<int, int, int>> out;
  for (const auto* v : {&r.e_pairs, &r.a_pairs})
    for (const auto& p : *v) out.emplace(p.h, p.source_level, p.target_level);
  return out;
}

// Columns of a change of basis only reach generators at the element's level or above.
template <class K>
bool filtered_columns(const FilteredComplex<K>& c, const DecomposedComplex<K>& r, int h) {
  const auto& P = r.to_old.at(h);
  const auto& el = r.elements.at(h);
  for (int j = 0; j < P.cols(); ++j)
    for (const auto& [i, x] : P.column(j))
      if (c.level(h, i) < el[j].level) return false;
  for (int j = 0; j < P.cols(); ++j) {
    bool hits = false;
    for (const auto& [i, x] : P.column(j)) hits |= c.level(h, i) == el[j].level;
    if (!hits) return false;
  }
  return true;
}

// The differential in the new basis: pair sources map onto their targets, nothing else is hit.
template <class K>
bool pair_diagonal(const FilteredComplex<K>& c, const DecomposedComplex<K>& r, int h) {
  if (c.dim(h) == 0 || c.dim(h + 1) == 0) return true;
  auto dn = multiply(r.to_new.at(h + 1), multiply(c.differential(h), r.to_old.at(h)));
  const auto& el = r.elements.at(h);
  for (int j = 0; j < dn.cols(); ++j) {
    const auto col = dn.column_vec(j);
    if (el[j].kind != DecomposedComplex<K>::Kind::PairSource) {
      if (!col.is_zero()) return false;
      continue;
    }
    if (col.nnz() != 1 || is_zero(col.get(el[j].partner))) return false;
  }
  return true;
}

template <class K>
void check_random(std::uint32_t seed, int cases) {
  std::mt19937 rng(seed);
  for (int t = 0; t < cases; ++t) {
    auto rf = khs::testing::random_filtered_complex<K>(rng);
    const auto& c = rf.complex;
    auto r = filtered_reduce(c);
    EXPECT_EQ(bars_of(r), rf.bars) << "case " << t;
    for (int h : c.degrees()) {
      EXPECT_EQ(r.harmonic_levels(h), rf.harmonic_levels[h]) << "case " << t << " degree " << h;
      EXPECT_EQ(r.harmonic_count(h), homology_field(c).dim(h));
      const int n = c.dim(h);
      auto id = multiply(r.to_old.at(h), r.to_new.at(h));
      for (int j = 0; j < n; ++j) {
        Vec<K> e(n);
        e.set(j, K(1));
        EXPECT_EQ(id.column_vec(j), e);
      }
      EXPECT_TRUE(filtered_columns(c, r, h)) << "case " << t;
      EXPECT_TRUE(pair_diagonal(c, r, h)) << "case " << t;
    }
    // dim H^h(C^{>=q}) from the barcode.
    for (int h : c.degrees())
      for (int q = -6; q <= 6; q += 2) {
        int expect = 0;
        for (int l : rf.harmonic_levels[h]) expect += l >= q;
        for (auto [bh, ls, lt] : rf.bars) expect += bh + 1 == h && ls < q && q <= lt;
        auto sh = sublevel_homology(c, q, h);
        EXPECT_EQ(sh.dim(), expect) << "case " << t << " h=" << h << " q=" << q;
        int jrank = 0;
        for (int l : rf.harmonic_levels[h]) jrank += l >= q;
        EXPECT_EQ(rank(sh.j), jrank);
      }
  }
}

}  // namespace

TEST(FilteredReduce, ZeroDifferential) {
  auto c = two_term<mpq_class>(0, 2, false);
  auto r = filtered_reduce(c);
  EXPECT_EQ(r.harmonic_count(0), 1);
  EXPECT_EQ(r.harmonic_count(1), 1);
  EXPECT_TRUE(r.e_pairs.empty());
  EXPECT_TRUE(r.a_pairs.empty());
}

TEST(FilteredReduce, SinglePairs) {
  auto a = filtered_reduce(two_term<F2>(2, 2, true));
  ASSERT_EQ(a.a_pairs.size(), 1u);
  EXPECT_TRUE(a.e_pairs.empty());
  EXPECT_EQ(a.harmonic_count(0) + a.harmonic_count(1), 0);
  auto e = filtered_reduce(two_term<F2>(0, 4, true));
  ASSERT_EQ(e.e_pairs.size(), 1u);
  EXPECT_EQ(e.e_pairs[0].source_level, 0);
  EXPECT_EQ(e.e_pairs[0].target_level, 4);
  EXPECT_EQ(e.cancellations.size(), 1u);
}

TEST(FilteredReduce, RejectsNonMonotone) {
  EXPECT_THROW(filtered_reduce(two_term<F2>(2, 0, true)), std::invalid_argument);
}

TEST(FilteredReduce, RandomComplexesQ) { check_random<mpq_class>(31, 220); }

TEST(FilteredReduce, RandomComplexesF2) { check_random<F2>(32, 220); }

TEST(FilteredReduce, BarNatanTrefoil) {
  // Two harmonic generators in degree 0, at s - 1 and s + 1.
  auto lc = prepare_complexes(builtin("trefoil"), LinkComplexes::Method::Naive);
  auto r = filtered_reduce(lc.bar_natan);
  EXPECT_EQ(r.harmonic_levels(0), (std::vector<int>{1, 3}));
  for (int h : lc.bar_natan.degrees())
    if (h != 0) EXPECT_EQ(r.harmonic_count(h), 0) << h;
  for (const auto& p : r.e_pairs) EXPECT_EQ(p.target_level - p.source_level, 2);
}

TEST(FilteredReduce, UnknotSublevels) {
  auto lc = prepare_complexes(builtin("unknot"), LinkComplexes::Method::Naive);
  const auto& c = lc.bar_natan;
  auto low = sublevel_homology(c, -1, 0);
  EXPECT_EQ(low.dim(), 2);
  EXPECT_EQ(rank(low.j), 2);
  auto below = sublevel_homology(c, -5, 0);
  EXPECT_EQ(below.dim(), 2);
  auto top = sublevel_homology(c, 1, 0);
  EXPECT_EQ(top.dim(), 1);
  EXPECT_EQ(rank(top.p), 1);
  auto above = sublevel_homology(c, 3, 0);
  EXPECT_EQ(above.dim(), 0);
}

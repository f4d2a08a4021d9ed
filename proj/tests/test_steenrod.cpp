#include <gtest/gtest.h>

#include <random>

#include "khs/khs.hpp"
#include "test_util.hpp"

using namespace khs;

namespace {

std::set<std::pair<int, int>> bidegrees(const FilteredComplex<mpz_class>& c) {
  std::set<std::pair<int, int>> out;
  for (int h : c.degrees())
    for (int l : c.levels(h)) out.insert({h, l});
  return out;
}

int z2_count(const HomologyTable& t, int h, int q) { return t.torsion_count(h, q, mpz_class(2)); }

}  // namespace

TEST(Sq1, UnknotAndTorsionFreeLinks) {
  for (const auto& n : {"unknot", "hopf+", "hopf-", "torus:2:1"}) {
    auto lc = prepare_complexes(builtin(n), LinkComplexes::Method::Reduced);
    for (auto [h, q] : bidegrees(lc.khovanov)) EXPECT_EQ(sq1(lc, h, q).rank(), 0) << n << " " << h << "," << q;
  }
}

TEST(Sq1, Examples) {
  EXPECT_EQ(sq1(builtin("trefoil"), 3, 7).rank(), 1);
  EXPECT_EQ(sq1(builtin("trefoil"), 3, 9).rank(), 0);
  auto t31 = torus_link({3, 1});
  EXPECT_EQ(sq1(t31, 0, -3).rank(), 0);
  EXPECT_EQ(sq1(t31, -1, -3).rank(), 1);
  auto img = sq1_image(t31, -1, -3);
  ASSERT_EQ(img.dim(), 1);
  EXPECT_FALSE(img.chains[0].is_zero());
}

TEST(Sq1, MatchesZ2SummandsOnCorpus) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    auto lc = prepare_complexes(d, LinkComplexes::Method::Reduced);
    auto kz = khovanov_homology(lc, RingKind::Integers);
    for (auto [h, q] : bidegrees(lc.khovanov)) EXPECT_EQ(sq1(lc, h, q).rank(), z2_count(kz, h, q)) << n;
  }
}

TEST(Sq1, RandomBraids) {
  std::mt19937 rng(17);
  for (int t = 0; t < 220; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 7);
    auto lc = prepare_complexes(b.diagram, LinkComplexes::Method::Reduced);
    auto kz = khovanov_homology(lc, RingKind::Integers);
    for (auto [h, q] : bidegrees(lc.khovanov)) {
      auto into = sq1(lc, h, q);
      EXPECT_EQ(into.rank(), z2_count(kz, h, q)) << b.str() << " at " << h << "," << q;
      auto next = sq1(lc, h + 1, q);
      if (into.matrix.rows() && next.matrix.rows())
        EXPECT_EQ(rank(multiply(next.matrix, into.matrix)), 0) << b.str() << " at " << h << "," << q;
    }
  }
}

TEST(Sq1, NaiveMatchesReduced) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    auto a = prepare_complexes(d, LinkComplexes::Method::Naive);
    auto b = prepare_complexes(d, LinkComplexes::Method::Reduced);
    for (auto [h, q] : bidegrees(a.khovanov)) EXPECT_EQ(sq1(a, h, q).rank(), sq1(b, h, q).rank()) << n;
  }
}

TEST(Sq1, IndependentOfRepresentative) {
  std::mt19937 rng(18);
  for (const auto& n : {"trefoil", "figure8", "9_42", "torus:3:1"}) {
    auto lc = prepare_complexes(builtin(n), LinkComplexes::Method::Naive);
    for (auto [h, q] : bidegrees(lc.khovanov)) {
      auto m = sq1(lc, h + 1, q);
      if (m.matrix.cols() == 0) continue;
      auto piece = lc.khovanov.graded_piece(q);
      auto p2 = mod2(piece.complex);
      auto tgt = homology_at(p2, h + 1);
      for (int r = 0; r < m.matrix.cols(); ++r) {
        // Perturb the source representative by a random boundary.
        Vec<F2> rep = m.source_reps[r];
        if (p2.dim(h - 1) > 0) {
          Vec<F2> u(p2.dim(h - 1));
          for (int i = 0; i < u.dim(); ++i)
            if (rng() % 2) u.set(i, F2(1));
          rep.axpy(F2(1), p2.differential(h - 1).apply(u));
        }
        auto y = bockstein_chain(piece.complex.differential(h), rep);
        auto co = tgt.coordinates(y);
        ASSERT_TRUE(co.has_value());
        EXPECT_EQ(*co, m.matrix.column_vec(r)) << n << " at " << h << "," << q;
      }
    }
  }
}

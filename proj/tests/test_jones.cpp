#include <gtest/gtest.h>

#include <random>

#include "khs/khs.hpp"
#include "test_util.hpp"

using namespace khs;

namespace {

// (q + q^-1) V(t) with t = q^2 up to sign, from the published Jones polynomials.
Laurent unnormalized(const std::map<int, long long>& v_in_q2) {
  Laurent v;
  for (auto [e, c] : v_in_q2) v.add(e, c);
  return (Laurent::monomial(1) + Laurent::monomial(-1)) * v;
}

}  // namespace

TEST(Jones, Basics) {
  EXPECT_EQ(jones_oracle(OrientedLinkDiagram{}), Laurent::monomial(0));
  EXPECT_EQ(jones_oracle(builtin("unknot")), Laurent::monomial(1) + Laurent::monomial(-1));
  // Two split unknots: (q + q^-1)^2.
  auto two = jones_oracle(parse_pd("Loop(1) Loop(2)"));
  EXPECT_EQ(two, (Laurent::monomial(1) + Laurent::monomial(-1)) * (Laurent::monomial(1) + Laurent::monomial(-1)));
}

TEST(Jones, KnotTable) {
  EXPECT_EQ(jones_oracle(builtin("figure8")), unnormalized({{-4, 1}, {-2, -1}, {0, 1}, {2, -1}, {4, 1}}));
  EXPECT_EQ(jones_oracle(builtin("9_42")),
            unnormalized({{-6, 1}, {-4, -1}, {-2, 1}, {0, -1}, {2, 1}, {4, -1}, {6, 1}}));
  EXPECT_EQ(jones_oracle(builtin("trefoil")), unnormalized({{2, 1}, {6, 1}, {8, -1}}));
}

TEST(Jones, MirrorInvertsQ) {
  std::mt19937 rng(6);
  for (int t = 0; t < 60; ++t) {
    auto b = khs::testing::random_braid(rng);
    Laurent a = jones_oracle(b.diagram), m = jones_oracle(mirror(b.diagram));
    Laurent flipped;
    for (auto [e, c] : a.terms()) flipped.add(-e, c);
    EXPECT_EQ(m, flipped) << b.str();
  }
}

TEST(Jones, EulerCharacteristicOfKhovanov) {
  std::mt19937 rng(7);
  for (int t = 0; t < 220; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 7);
    auto kh = khovanov_homology(b.diagram, RingKind::Rationals);
    EXPECT_EQ(khs::testing::graded_euler(kh), jones_oracle(b.diagram)) << b.str();
  }
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    EXPECT_EQ(khs::testing::graded_euler(khovanov_homology(d, RingKind::Rationals)), jones_oracle(d)) << n;
  }
}

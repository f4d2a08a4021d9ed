#include <gtest/gtest.h>

#include <random>
#include <set>

#include "khs/khs.hpp"
#include "test_util.hpp"

using namespace khs;

namespace {

template <class K>
std::set<int> jumps(const FilteredComplex<K>& c) {
  std::set<int> out;
  c.for_each_entry([&](int, int, int, const K&, int from, int to) { out.insert(to - from); });
  return out;
}

// Classes of the canonical generators of all 2^n orientations, checked independent degree by degree.
template <class K>
void expect_canonical_basis(const OrientedLinkDiagram& d, FrobeniusKind kind) {
  Cube cube(d);
  auto c = build_complex<K>(cube, kind);
  const int n = d.component_count();
  std::map<int, std::vector<Vec<K>>> by_degree;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<bool> rev(n);
    for (int i = 0; i < n; ++i) rev[i] = (mask >> i & 1) != 0;
    auto g = canonical_generator<K>(cube, kind, rev);
    ASSERT_TRUE(c.differential(g.degree).apply(g.chain).is_zero()) << serialize(d);
    by_degree[g.degree].push_back(g.chain);
  }
  auto h = homology_field(c);
  int total = 0;
  for (int deg : c.degrees()) total += h.dim(deg);
  EXPECT_EQ(total, 1 << n) << serialize(d);
  for (auto& [deg, chains] : by_degree) {
    auto basis = homology_at(c, deg);
    Eliminator<K> e(basis.dim());
    for (auto& ch : chains) {
      auto co = basis.coordinates(ch);
      ASSERT_TRUE(co.has_value());
      Vec<K> v = *co;
      EXPECT_TRUE(e.insert(v)) << serialize(d) << " degree " << deg;
    }
  }
}

}  // namespace

TEST(Cube, DifferentialSquaresToZero) {
  std::mt19937 rng(9);
  for (int t = 0; t < 220; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 6);
    Cube cube(b.diagram);
    auto kz = build_complex<mpz_class>(cube, FrobeniusKind::Khovanov);
    auto bn = build_complex<F2>(cube, FrobeniusKind::BarNatan);
    auto lee = build_complex<mpz_class>(cube, FrobeniusKind::Lee);
    EXPECT_TRUE(kz.d_squared_zero()) << b.str();
    EXPECT_TRUE(bn.d_squared_zero()) << b.str();
    EXPECT_TRUE(lee.d_squared_zero()) << b.str();
  }
}

TEST(Cube, FiltrationJumps) {
  std::mt19937 rng(10);
  int saw_bn = 0, saw_lee = 0;
  for (int t = 0; t < 220; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 6);
    Cube cube(b.diagram);
    auto kz = build_complex<mpz_class>(cube, FrobeniusKind::Khovanov);
    auto bn = build_complex<F2>(cube, FrobeniusKind::BarNatan);
    auto lee = build_complex<mpq_class>(cube, FrobeniusKind::Lee);
    EXPECT_TRUE(kz.level_preserving()) << b.str();
    EXPECT_TRUE(bn.filtration_monotone()) << b.str();
    EXPECT_TRUE(lee.filtration_monotone()) << b.str();
    for (int j : jumps(bn)) EXPECT_TRUE(j == 0 || j == 2) << b.str();
    for (int j : jumps(lee)) EXPECT_TRUE(j == 0 || j == 4) << b.str();
    saw_bn += jumps(bn).count(2);
    saw_lee += jumps(lee).count(4);
  }
  EXPECT_GT(saw_bn, 0);
  EXPECT_GT(saw_lee, 0);
}

TEST(Cube, KhovanovPartOfDeformation) {
  // Dropping the deformation entries recovers the Khovanov differential.
  auto d = builtin("figure8");
  Cube cube(d);
  auto kz = build_complex<mpz_class>(cube, FrobeniusKind::Khovanov);
  auto lee = build_complex<mpz_class>(cube, FrobeniusKind::Lee);
  std::map<std::tuple<int, int, int>, mpz_class> a, b;
  kz.for_each_entry([&](int h, int j, int i, const mpz_class& x, int, int) { a[{h, j, i}] = x; });
  lee.for_each_entry([&](int h, int j, int i, const mpz_class& x, int from, int to) {
    if (from == to) b[{h, j, i}] = x;
  });
  EXPECT_EQ(a, b);
}

TEST(Cube, RejectsLeeInCharacteristicTwo) {
  auto d = builtin("trefoil");
  EXPECT_ANY_THROW(build_complex<F2>(d, FrobeniusKind::Lee));
  Cube cube(d);
  EXPECT_ANY_THROW(canonical_generator<mpq_class>(cube, FrobeniusKind::Khovanov, {false}));
}

TEST(Cube, CanonicalGeneratorsSpanDeformedHomology) {
  for (const auto& n : {"unknot", "hopf+", "hopf-", "trefoil", "figure8", "torus:3:1", "torus:3:0"}) {
    expect_canonical_basis<mpq_class>(builtin(n), FrobeniusKind::Lee);
    expect_canonical_basis<F2>(builtin(n), FrobeniusKind::BarNatan);
  }
  std::mt19937 rng(12);
  for (int t = 0; t < 40; ++t) {
    auto b = khs::testing::random_braid(rng, 3, 5);
    expect_canonical_basis<mpq_class>(b.diagram, FrobeniusKind::Lee);
    expect_canonical_basis<F2>(b.diagram, FrobeniusKind::BarNatan);
  }
}

TEST(Cube, CanonicalPairInDegreeZero) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    auto lc = prepare_complexes(d, LinkComplexes::Method::Naive);
    EXPECT_FALSE(lc.bn_so.is_zero()) << n;
    EXPECT_FALSE(lc.lee_sob.is_zero()) << n;
    EXPECT_TRUE(lc.bar_natan.differential(0).apply(lc.bn_so).is_zero()) << n;
    EXPECT_TRUE(lc.lee.differential(0).apply(lc.lee_sob).is_zero()) << n;
  }
}

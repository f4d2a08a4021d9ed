#include <gtest/gtest.h>

#include <random>

#include "khs/khs.hpp"
#include "test_util.hpp"

using namespace khs;

namespace {

int torus_formula(int n, int q) {
  const int p = n - q;
  return (p - q) * (p - q) - 2 * p + 1;
}

RefinedOptions opts(ThetaOperation t, bool sweep = false) {
  RefinedOptions o;
  o.theta = t;
  o.full_sweep = sweep;
  return o;
}

const std::vector<ThetaOperation> kThetas = {ThetaOperation::sq1(), ThetaOperation::zero(RingKind::F2),
                                             ThetaOperation::zero(RingKind::Rationals)};

// Sq1 images into degree 0 at level q, moved onto the Bar-Natan generator ids.
std::vector<Vec<F2>> sq1_images_in_bn(const LinkComplexes& lc, int q) {
  std::vector<Vec<F2>> out;
  auto img = sq1_image(sq1(lc.khovanov, 0, q));
  auto m = sq1(lc.khovanov, 0, q);
  for (const auto& ch : img.chains) {
    Vec<F2> v(lc.bar_natan.dim(0));
    ch.for_each([&](int i, F2) {
      const int id = lc.khovanov.ids(0)[m.target_parent_index[i]];
      v.set(lc.bar_natan.index_of(0, id), F2(1));
    });
    out.push_back(v);
  }
  return out;
}

template <class K>
void expect_routes_agree(const LinkComplexes& lc, ThetaOperation t, const std::string& what) {
  RefinedEngine<K> e(lc, t);
  for (int q : e.sweep_levels()) {
    EXPECT_EQ(e.plain_dim(q), homological_fullness_dim(e.complex(), e.so(), e.sob(), q, {}, false)) << what << " q=" << q;
    std::vector<Vec<K>> images;
    if constexpr (std::is_same_v<K, F2>)
      if (t.kind == ThetaKind::Sq1) images = sq1_images_in_bn(lc, q);
    EXPECT_EQ(e.theta_dim(q), homological_fullness_dim(e.complex(), e.so(), e.sob(), q, images, true))
        << what << " q=" << q;
  }
}

template <class K>
void expect_certificates_valid(const LinkComplexes& lc, ThetaOperation t, const std::string& what) {
  auto r = refined_s(lc, opts(t));
  RefinedEngine<K> e(lc, t);
  EXPECT_FALSE(r.certificates.empty()) << what;
  for (const auto& c : r.certificates) {
    std::string why;
    EXPECT_TRUE(e.validate(c, &why)) << what << " " << c.role << ": " << why;
  }
}

}  // namespace

TEST(Refined, TorusLinks) {
  for (int n = 2; n <= 3; ++n)
    for (int q = 0; 2 * q <= n; ++q) {
      auto d = torus_link({n, q});
      const int expect = torus_formula(n, q);
      EXPECT_EQ(s_classical(d, RingKind::F2), expect) << n << "," << q;
      EXPECT_EQ(s_classical(d, RingKind::Rationals), expect) << n << "," << q;
      EXPECT_EQ(s_plus(d, ThetaOperation::sq1()), expect) << n << "," << q;
    }
  EXPECT_EQ(r_plus(torus_link({2, 1}), ThetaOperation::sq1()), -1);
}

TEST(Refined, TorusLinksFourStrands) {
  for (int q = 0; q <= 2; ++q) {
    auto r = refined_s(torus_link({4, q}), opts(ThetaOperation::sq1()));
    EXPECT_EQ(r.s, torus_formula(4, q)) << q;
    EXPECT_EQ(r.s_plus, torus_formula(4, q)) << q;
    if (q == 2) EXPECT_EQ(r.r_plus, torus_formula(4, q));
  }
}

TEST(Refined, PositiveBraidFormula) {
  // For a positive diagram s = writhe - (Seifert circles) + 1; a positive braid closure has one circle per strand.
  std::mt19937 rng(41);
  for (int t = 0; t < 60; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 7);
    for (int& g : b.word) g = std::abs(g);
    auto d = braid_closure(b.strands, b.word);
    const int expect = static_cast<int>(b.word.size()) - b.strands + 1;
    EXPECT_EQ(s_classical(d, RingKind::F2), expect) << b.str();
    EXPECT_EQ(s_classical(d, RingKind::Rationals), expect) << b.str();
  }
}

TEST(Refined, KnotExamples) {
  EXPECT_EQ(s_classical(builtin("unknot"), RingKind::Rationals), 0);
  EXPECT_EQ(s_classical(builtin("trefoil"), RingKind::F2), 2);
  EXPECT_EQ(s_classical(builtin("figure8"), RingKind::F2), 0);
  EXPECT_EQ(s_classical(builtin("5_1"), RingKind::Rationals), 4);
  EXPECT_EQ(s_plus(builtin("9_42"), ThetaOperation::sq1()), 0);
  EXPECT_EQ(s_classical(builtin("9_42"), RingKind::Rationals), 0);
  // Naive full cube for 9_42 as well.
  EXPECT_EQ(refined_s(builtin("9_42"), opts(ThetaOperation::sq1()), LinkComplexes::Method::Naive).s_plus, 0);
}

TEST(Refined, FullnessExamples) {
  auto u = prepare_complexes(builtin("unknot"), LinkComplexes::Method::Naive);
  RefinedEngine<mpq_class> eu(u, ThetaOperation::zero(RingKind::Rationals));
  EXPECT_EQ(fullness(eu, -1).plain, Fullness::Full);
  EXPECT_EQ(fullness(eu, 1).plain, Fullness::HalfFull);
  EXPECT_EQ(fullness(eu, 3).plain, Fullness::Not);
  EXPECT_THROW(fullness(eu, 0), std::invalid_argument);

  auto t = prepare_complexes(torus_link({3, 1}), LinkComplexes::Method::Reduced);
  RefinedEngine<F2> et(t, ThetaOperation::sq1());
  auto f = fullness(et, -3);
  EXPECT_NE(f.refined, Fullness::Full);
  EXPECT_EQ(f.plain, Fullness::Full);
  for (const auto& c : f.certificates) EXPECT_TRUE(et.validate(c)) << c.role;
}

TEST(Refined, SubspaceW) {
  auto u = prepare_complexes(builtin("unknot"), LinkComplexes::Method::Naive);
  EXPECT_EQ(subspace_W(RefinedEngine<mpq_class>(u, ThetaOperation::zero(RingKind::Rationals))).homology_dim, 2);
  auto h = prepare_complexes(builtin("hopf+"), LinkComplexes::Method::Naive);
  EXPECT_EQ(subspace_W(RefinedEngine<mpq_class>(h, ThetaOperation::zero(RingKind::Rationals))).homology_dim, 2);
  // Reversing a knot swaps the two canonical chains.
  auto k = builtin("trefoil");
  auto a = prepare_complexes(k, LinkComplexes::Method::Naive);
  auto b = prepare_complexes(reverse_all(k), LinkComplexes::Method::Naive);
  EXPECT_EQ(a.lee_so, b.lee_sob);
  EXPECT_EQ(a.bn_sob, b.bn_so);
}

TEST(Refined, EmptyLinkConvention) {
  for (const auto& t : kThetas) {
    auto r = refined_s(OrientedLinkDiagram{}, opts(t));
    EXPECT_EQ(r.s, 1);
    EXPECT_EQ(r.r_plus, 1);
    EXPECT_EQ(r.s_plus, 1);
    EXPECT_EQ(r.components, 0);
  }
}

TEST(Refined, RejectsSq1InCharacteristicZero) {
  ThetaOperation bad{ThetaKind::Sq1, RingKind::Rationals};
  EXPECT_THROW(refined_s(builtin("trefoil"), opts(bad)), std::invalid_argument);
  EXPECT_THROW(parse_theta("sq2"), std::invalid_argument);
}

TEST(Refined, DichotomyOnCorpus) {
  for (const auto& n : regression_corpus()) {
    auto lc = prepare_complexes(builtin(n), LinkComplexes::Method::Reduced);
    for (const auto& t : kThetas) {
      auto r = refined_s(lc, opts(t, true));
      for (int v : {r.r_plus, r.s_plus}) {
        EXPECT_TRUE(v == r.s || v == r.s + 2) << n << " " << to_string(t.kind);
        EXPECT_EQ(((v - r.components - 1) % 2 + 2) % 2, 0) << n;
      }
      if (t.kind == ThetaKind::Zero) {
        EXPECT_EQ(r.r_plus, r.s) << n;
        EXPECT_EQ(r.s_plus, r.s) << n;
      }
    }
  }
}

TEST(Refined, LadderOnCorpus) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    auto lc = prepare_complexes(d, LinkComplexes::Method::Reduced);
    RefinedEngine<F2> e(lc, ThetaOperation::sq1());
    for (int q : e.sweep_levels()) {
      EXPECT_LE(e.theta_dim(q), e.plain_dim(q)) << n << " q=" << q;
      EXPECT_GE(e.theta_dim(q - 2), e.plain_dim(q)) << n << " q=" << q;
    }
  }
}

TEST(Refined, RoutesAgree) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    auto lc = prepare_complexes(d, LinkComplexes::Method::Reduced);
    expect_routes_agree<F2>(lc, ThetaOperation::sq1(), n);
    expect_routes_agree<F2>(lc, ThetaOperation::zero(RingKind::F2), n);
    expect_routes_agree<mpq_class>(lc, ThetaOperation::zero(RingKind::Rationals), n);
  }
}

TEST(Refined, NaiveMatchesReduced) {
  for (const auto& n : regression_corpus())
    for (const auto& t : kThetas) {
      auto a = refined_s(builtin(n), opts(t), LinkComplexes::Method::Naive);
      auto b = refined_s(builtin(n), opts(t), LinkComplexes::Method::Reduced);
      EXPECT_EQ(std::tie(a.s, a.r_plus, a.s_plus), std::tie(b.s, b.r_plus, b.s_plus)) << n;
    }
}

TEST(Refined, CertificatesRevalidate) {
  for (const auto& n : regression_corpus()) {
    auto d = builtin(n);
    if (d.empty()) continue;
    for (auto m : {LinkComplexes::Method::Naive, LinkComplexes::Method::Reduced}) {
      auto lc = prepare_complexes(d, m);
      expect_certificates_valid<F2>(lc, ThetaOperation::sq1(), n);
      expect_certificates_valid<mpq_class>(lc, ThetaOperation::zero(RingKind::Rationals), n);
    }
  }
  std::mt19937 rng(43);
  for (int t = 0; t < 200; ++t) {
    auto b = khs::testing::random_braid(rng, 4, 6);
    auto lc = prepare_complexes(b.diagram, LinkComplexes::Method::Reduced);
    expect_certificates_valid<F2>(lc, ThetaOperation::sq1(), b.str());
  }
}

TEST(Refined, TamperedCertificatesFail) {
  auto lc = prepare_complexes(builtin("trefoil"), LinkComplexes::Method::Naive);
  RefinedEngine<F2> e(lc, ThetaOperation::sq1());
  auto r = refined_s(lc, opts(ThetaOperation::sq1()));
  ASSERT_FALSE(r.certificates.empty());
  auto c = r.certificates.front();
  ASSERT_TRUE(e.validate(c));
  auto raised = c;
  raised.q += 20;
  EXPECT_FALSE(e.validate(raised));
  auto flipped = c;
  flipped.alpha += 1;
  EXPECT_FALSE(e.validate(flipped));
  auto stray = c;
  stray.x[-12345] = 1;
  EXPECT_FALSE(e.validate(stray));
  auto dropped = c;
  ASSERT_FALSE(dropped.x.empty());
  dropped.x.erase(dropped.x.begin());
  EXPECT_FALSE(e.validate(dropped));
}

TEST(Refined, MinusVersions) {
  auto z = ThetaOperation::zero(RingKind::Rationals);
  EXPECT_EQ(minus_versions(builtin("unknot"), z), std::make_pair(0, 0));
  const int s_mirror = s_classical(builtin("trefoil-"), RingKind::Rationals);
  EXPECT_EQ(minus_versions(builtin("trefoil"), z), std::make_pair(-s_mirror, -s_mirror));
  auto d = builtin("9_42");
  auto [rm, sm] = minus_versions(d, ThetaOperation::sq1());
  EXPECT_EQ(rm, -r_plus(mirror(d), ThetaOperation::sq1()));
  EXPECT_EQ(sm, -s_plus(mirror(d), ThetaOperation::sq1()));
}

TEST(Refined, KnotMirrorNegatesS) {
  std::mt19937 rng(44);
  int knots = 0;
  while (knots < 40) {
    auto b = khs::testing::random_braid(rng, 4, 7);
    if (b.diagram.component_count() != 1) continue;
    ++knots;
    EXPECT_EQ(s_classical(mirror(b.diagram), RingKind::Rationals), -s_classical(b.diagram, RingKind::Rationals))
        << b.str();
  }
}

TEST(Refined, DiagramInvariance) {
  for (const auto& [a, b] : {std::pair{"trefoil", "trefoil-stab"}, std::pair{"hopf+", "hopf-stab"}}) {
    auto ra = refined_s(builtin(a), opts(ThetaOperation::sq1()));
    auto rb = refined_s(builtin(b), opts(ThetaOperation::sq1()));
    EXPECT_EQ(std::tie(ra.s, ra.r_plus, ra.s_plus), std::tie(rb.s, rb.r_plus, rb.s_plus)) << a;
  }
  // Markov moves: conjugation and positive or negative stabilization.
  std::mt19937 rng(45);
  for (int t = 0; t < 40; ++t) {
    auto b = khs::testing::random_braid(rng, 3, 6);
    auto base = refined_s(b.diagram, opts(ThetaOperation::sq1()));
    std::vector<int> conj(b.word.begin() + 1, b.word.end());
    conj.push_back(b.word.front());
    std::vector<int> stab = b.word;
    stab.push_back(rng() % 2 ? b.strands : -b.strands);
    for (const auto& d : {braid_closure(b.strands, conj), braid_closure(b.strands + 1, stab)}) {
      auto r = refined_s(d, opts(ThetaOperation::sq1()));
      EXPECT_EQ(std::tie(base.s, base.r_plus, base.s_plus), std::tie(r.s, r.r_plus, r.s_plus)) << b.str();
    }
  }
}

TEST(Refined, DisjointUnion) {
  for (const auto& l : {"empty", "unknot", "hopf+", "trefoil"})
    for (const auto& t : {"torus:2:1", "torus:2:0"}) {
      auto rep = disjoint_union_check(builtin(l), builtin(t));
      EXPECT_TRUE(rep.hypothesis_checked);
      EXPECT_TRUE(rep.hypothesis.holds()) << t;
      EXPECT_TRUE(rep.equal()) << l << " + " << t << ": " << rep.s_plus_union << " vs " << rep.rhs();
      // Classical additivity as a second opinion.
      const int su = s_classical(disjoint_union(builtin(l), builtin(t)), RingKind::F2);
      EXPECT_EQ(su, s_classical(builtin(l), RingKind::F2) + s_classical(builtin(t), RingKind::F2) - 1);
    }
  auto e = disjoint_union_check(builtin("trefoil"), OrientedLinkDiagram{});
  EXPECT_FALSE(e.hypothesis_checked);
  EXPECT_TRUE(e.passed());
}

TEST(Refined, Adjunction) {
  EXPECT_EQ(adjunction_bound(1, 1, -1, 1), 0);
  EXPECT_TRUE(adjunction_check(0, s_plus(builtin("9_42"), ThetaOperation::sq1())));
  EXPECT_FALSE(adjunction_check(0, 2));
  EXPECT_EQ(adjunction_bound(3, 0, 0, 1), 2);
  EXPECT_THROW(adjunction_bound(1, 1, -1, 0), std::invalid_argument);
}

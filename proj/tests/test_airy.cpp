#include <gtest/gtest.h>

#include "support.hpp"

using namespace isoclinic;
using namespace testsupport;

TEST(Airy, KsAiryAtZero) {
  for (auto name : {"A1", "A2", "B2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    const int h = g->coxeter;
    auto cf = reduce_to_canonical(restrict_to_zero(ks_airy(g), h)).form;
    ASSERT_EQ(cf.k(), 1) << name;
    EXPECT_EQ(cf.slopes[0], Rational(h + 1, h)) << name;
    EXPECT_TRUE(is_isoclinic(cf)) << name;
    EXPECT_TRUE(is_regular_semisimple(*g, cf.D[0])) << name;
  }
}

TEST(Airy, HolomorphicAtInfinity) {
  for (auto name : {"A1", "A2", "B2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    Rational nu(g->coxeter + 1, g->coxeter);
    auto r = infinity_check(ks_airy(g), nu);
    EXPECT_TRUE(r.holomorphic) << name;
    EXPECT_TRUE(r.trivial_monodromy) << name;
    EXPECT_EQ(r.certificate, "holomorphic");
    EXPECT_EQ(r.s_exponents.front(), 0);
  }
}

TEST(Airy, AtInfinityChart) {
  auto g = build_algebra<Cyc>("A1");
  auto s = at_infinity(ks_airy(g));
  EXPECT_EQ(s.chart, "s");
  EXPECT_EQ(s.coeff.count(0), 1u);  // t^{-2} dt = -ds
  EXPECT_EQ(s.coeff.count(1), 1u);  // t^{-3} dt = -s ds
}

TEST(Airy, RegularButNotHolomorphic) {
  // a t^{-1} dt term has a simple pole at infinity
  auto g = build_algebra<Cyc>("A1");
  auto gc = ks_airy(g);
  gc.add(-1, g->basis(0));
  auto r = infinity_check(gc, Rational(3, 2));
  EXPECT_TRUE(r.regular);
  EXPECT_FALSE(r.holomorphic);
  EXPECT_EQ(r.certificate, "not certified");
  gc.add(0, g->basis(0));
  EXPECT_FALSE(infinity_check(gc, Rational(3, 2)).regular);
}

TEST(Airy, GlobalizeRestrictRoundTrip) {
  std::mt19937 rng(6);
  for (auto name : {"A1", "A2"}) {
    auto g = build_algebra<Cyc>(name);
    const int h = g->coxeter;
    Rational nu(h + 1, h);
    for (int s = 0; s < 3; ++s) {
      std::map<int, Cyc> lower;
      for (int i = 1; i < g->n; ++i) lower[i] = small_int(rng, 3, false);
      auto op = airy_oper(g, small_int(rng, 3, true), lower);
      auto gc = globalize(op, nu);
      auto a = reduce_to_canonical(restrict_to_zero(gc, h)).form;
      auto b = oper_to_canonical(op).reduction.form;
      EXPECT_TRUE(irregular_part_equal(a, b)) << name;
      EXPECT_TRUE(same_oper(canonical_to_minimal_oper(a).oper, op)) << name;
      EXPECT_TRUE(infinity_check(gc, nu).holomorphic);
    }
  }
}

TEST(Airy, FamilyRejectsSingularLeading) {
  auto g = build_algebra<Cyc>("A1");
  EXPECT_THROW(airy_family(g, Cyc(0)), DomainError);
}

TEST(Airy, GlobalizeRejectsNonMinimal) {
  auto g = build_algebra<Cyc>("A1");
  OperForm<Cyc> op{g, {}};
  op.set(1, 4, Cyc(1));
  op.set(1, 0, Cyc(1));
  EXPECT_THROW(globalize(op, Rational(3, 2)), DomainError);
}

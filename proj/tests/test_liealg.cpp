#include <gtest/gtest.h>

#include "support.hpp"

using namespace isoclinic;
using namespace testsupport;

TEST(LieAlg, DimensionsAndDegrees) {
  const std::map<std::string, std::pair<int, std::vector<int>>> known = {
      {"A1", {3, {2}}}, {"A2", {8, {2, 3}}}, {"A3", {15, {2, 3, 4}}}, {"B2", {10, {2, 4}}}, {"C2", {10, {2, 4}}}, {"G2", {14, {2, 6}}}};
  for (auto& [name, dd] : known) {
    auto g = build_algebra<Cyc>(name);
    EXPECT_EQ(g->dim, dd.first) << name;
    EXPECT_EQ(g->degrees, dd.second) << name;
    EXPECT_EQ(g->coxeter, dd.second.back()) << name;
  }
}

TEST(LieAlg, WeylGroupOrders) {
  const std::map<std::string, std::size_t> order = {{"A1", 2}, {"A2", 6}, {"A3", 24}, {"B2", 8}, {"C2", 8}, {"G2", 12}};
  for (auto& [name, o] : order) EXPECT_EQ(weyl_group(*build_algebra<Cyc>(name)).size(), o) << name;
}

TEST(LieAlg, RegularEllipticNumbers) {
  const std::map<std::string, std::set<int>> known = {{"A1", {2}}, {"A2", {3}}, {"A3", {4}}, {"B2", {2, 4}}, {"C2", {2, 4}}, {"G2", {2, 3, 6}}};
  for (auto& [name, s] : known) EXPECT_EQ(regular_elliptic_numbers(*build_algebra<Cyc>(name)), s) << name;
}

TEST(LieAlg, StructuralInvariants) {
  for (auto& name : all_types()) {
    auto g = build_algebra<Cyc>(name);
    EXPECT_TRUE(jacobi_holds(*g)) << name;
    EXPECT_TRUE(killing_invariant(*g)) << name;
    EXPECT_TRUE(principal_triple(*g)) << name;
    for (int m : regular_elliptic_numbers(*g)) EXPECT_TRUE(grading_multiplicative(*g, m)) << name << " m=" << m;
  }
}

TEST(LieAlg, KostantSectionRoundTrip) {
  std::mt19937 rng(3);
  for (auto& name : all_types()) {
    auto g = build_algebra<Cyc>(name);
    for (int s = 0; s < 5; ++s) {
      std::vector<Cyc> c;
      for (int i = 0; i < g->n; ++i) c.push_back(small_int(rng, 4, false));
      auto x = kostant_element(*g, c);
      auto back = invariant_coordinates(*g, x);
      for (int i = 0; i < g->n; ++i) EXPECT_TRUE(Field<Cyc>::is_zero(back[i] - c[i])) << name;
    }
  }
}

TEST(LieAlg, InvariantsAreAdInvariant) {
  // sigma(exp(ad e) x) = sigma(x) for a nilpotent e
  std::mt19937 rng(11);
  for (auto& name : all_types()) {
    auto g = build_algebra<Cyc>(name);
    auto x = g->zero();
    for (auto& v : x) v = small_int(rng, 3, false);
    auto E = exp_ad_nilpotent(*g, g->p_plus);
    auto a = invariant_coordinates(*g, x), b = invariant_coordinates(*g, E * x);
    for (int i = 0; i < g->n; ++i) EXPECT_TRUE(Field<Cyc>::is_zero(a[i] - b[i])) << name;
  }
}

TEST(LieAlg, RegularSemisimpleTests) {
  auto g = build_algebra<Cyc>("A1");
  auto e = g->basis(g->root_index({1})), f = g->basis(g->root_index({-1}));
  EXPECT_TRUE(is_regular_semisimple(*g, add(e, f)));
  EXPECT_FALSE(is_regular_semisimple(*g, e));
  EXPECT_TRUE(is_nilpotent(*g, e));
  EXPECT_TRUE(is_semisimple(*g, g->basis(0)));
}

TEST(LieAlg, UnsupportedType) { EXPECT_THROW(build_algebra<Cyc>("E8"), DomainError); }

TEST(LieAlg, FloatFieldAgrees) {
  auto ge = build_algebra<Cyc>("G2");
  auto gf = build_algebra<Complex>("G2");
  for (int a = 0; a < ge->dim; ++a)
    for (int b = 0; b < ge->dim; ++b) EXPECT_NEAR(std::abs(Field<Cyc>::to_complex(ge->killing(a, b)) - gf->killing(a, b)), 0.0, 1e-12);
}

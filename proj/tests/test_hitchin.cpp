#include <gtest/gtest.h>

#include "support.hpp"

using namespace isoclinic;
using namespace testsupport;

namespace {
std::shared_ptr<const ToralDatum<Cyc>> datum(const char* name, int m, int N) {
  return std::make_shared<const ToralDatum<Cyc>>(build_toral_datum<Cyc>(build_algebra<Cyc>(name), m, N));
}
}  // namespace

TEST(Hitchin, Sl2OperForm) {
  // (f + t^{-3} e) dt has h_1 = t^{-3}
  auto g = build_algebra<Cyc>("A1");
  LieSeries<Cyc> w(g->dim, 1, kExact);
  w.add_to(0, g->basis(g->root_index({-1})));
  w.add_to(-3, g->basis(g->root_index({1})));
  auto hp = local_hitchin(*g, w, FormKind::Dt);
  EXPECT_EQ(hp.h[0].coeff(-3), Cyc(1));
  EXPECT_EQ(hp.h[0].order(), -3);
}

TEST(Hitchin, HomogeneousUnderScaling) {
  // h_i is homogeneous of degree d_i in the form
  auto g = build_algebra<Cyc>("G2");
  std::mt19937 rng(4);
  LieSeries<Cyc> w(g->dim, 1, kExact), w2(g->dim, 1, kExact);
  for (int e = -2; e <= 0; ++e) {
    auto x = g->zero();
    for (auto& c : x) c = small_int(rng, 2, false);
    w.add_to(e, x);
    w2.add_to(e, x, Cyc(2));
  }
  auto a = local_hitchin(*g, w, FormKind::Dt), b = local_hitchin(*g, w2, FormKind::Dt);
  for (int i = 0; i < g->n; ++i)
    for (auto& [k, c] : a.h[i].terms) EXPECT_EQ(b.h[i].coeff(k), c * Cyc(Rational(1L << g->degrees[i])));
}

TEST(Hitchin, CharacterOfY) {
  auto d = datum("A1", 2, 3);
  auto phi = make_character<Cyc>(d, {});
  auto h = hitchin_on_bj(phi);
  EXPECT_EQ(h.at({1, 3}), Cyc(0));
  EXPECT_EQ(h.at({1, 4}), Cyc(Rational(1, 4)));
}

TEST(Hitchin, ImageLatticeA1) {
  auto d = datum("A1", 2, 3);
  EXPECT_EQ(hitchin_image_lattice(*d->g, 3, 2), std::vector<int>{-5});
  auto rep = verify_hitchin_image(*d, 20, 3, 5);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.contained, rep.samples);
  for (auto& w : rep.witnesses) EXPECT_TRUE(w.ok) << w.exponent;
}

TEST(Hitchin, ImageOtherAlgebras) {
  for (auto [name, m, N] : std::vector<std::tuple<const char*, int, int>>{{"A2", 3, 1}, {"B2", 4, 1}}) {
    auto rep = verify_hitchin_image(*datum(name, m, N), 5, 2, 3);
    EXPECT_TRUE(rep.pass) << name;
  }
}

TEST(Hitchin, LittleWeylGroupOrder) {
  for (auto [name, m, N] : std::vector<std::tuple<const char*, int, int>>{{"A1", 2, 3}, {"A2", 3, 1}, {"B2", 4, 1}, {"G2", 6, 1}}) {
    auto d = datum(name, m, N);
    EXPECT_EQ(little_weyl_group(*d).size(), regular_centralizer_order(*d->g, m)) << name;
  }
  EXPECT_THROW(little_weyl_group(*datum("B2", 2, 1)), DomainError);
}

TEST(Hitchin, HitchinIsW0Invariant) {
  std::mt19937 rng(9);
  auto d = datum("A2", 3, 2);
  auto W = little_weyl_group(*d);
  auto phi = random_regular_character(d, rng);
  auto h = hitchin_on_bj(phi);
  for (auto& w : W) EXPECT_TRUE(same_hitchin(hitchin_on_bj(torus_act(w, phi)), h));
}

TEST(Hitchin, FiberIsOrbit) {
  std::mt19937 rng(13);
  for (auto [name, m, N] : std::vector<std::tuple<const char*, int, int>>{{"A1", 2, 3}, {"A2", 3, 2}}) {
    auto d = datum(name, m, N);
    auto W = little_weyl_group(*d);
    for (int s = 0; s < 2; ++s) {
      auto phi = random_regular_character(d, rng);
      auto fib = fiber_over_phi(d, hitchin_on_bj(phi));
      EXPECT_TRUE(same_set(fib, orbit(phi, W))) << name;
    }
  }
}

TEST(Hitchin, LanglandsCoherentA1) {
  std::mt19937 rng(2);
  auto d = datum("A1", 2, 3);
  for (int s = 0; s < 3; ++s) {
    auto phi = random_regular_character(d, rng);
    auto lp = langlands_parameter(phi);
    EXPECT_TRUE(langlands_coherent(phi, lp));
    EXPECT_EQ(oper_slope(lp.oper), Rational(3, 2));
  }
}

TEST(Hitchin, LeadingMatchNeedsRegular) {
  auto g = build_algebra<Cyc>("A1");
  EXPECT_THROW(match_leading_terms(*g, g->basis(g->root_index({1}))), DomainError);
  auto m = match_leading_terms(*g, add(g->basis(1), g->basis(2)));
  EXPECT_TRUE(m.regular);
}

TEST(Hitchin, ReconstructCyclotomic) {
  auto c = detail::reconstruct_cyclotomic(Complex(-0.5, std::sqrt(3.0) / 2));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c * *c * *c, Cyc(1));
  EXPECT_FALSE(detail::reconstruct_cyclotomic(Complex(std::sqrt(2.0), 0.1)).has_value());
}

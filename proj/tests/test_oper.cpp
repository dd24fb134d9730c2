#include <gtest/gtest.h>

#include "support.hpp"

using namespace isoclinic;
using namespace testsupport;

TEST(Oper, SlopeFormula) {
  auto g = build_algebra<Cyc>("A1");
  OperForm<Cyc> op{g, {}};
  op.set(1, 2, Cyc(1));
  EXPECT_EQ(oper_slope(op), Rational(1, 2));
  op.set(1, 4, Cyc(3));
  EXPECT_EQ(oper_slope(op), Rational(3, 2));
  op.set(1, 4, Cyc(0));
  op.set(1, 1, Cyc(2));
  EXPECT_EQ(oper_slope(op), Rational(1, 2));
  EXPECT_EQ(oper_slope(OperForm<Cyc>{g, {}}), Rational(0));
}

TEST(Oper, EllIndexMatchesBruteForce) {
  for (auto name : {"A1", "A2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    for (int m : regular_elliptic_numbers(*g))
      for (int N = 1; N <= 2 * m + 1; ++N) {
        if (std::gcd(N, m) != 1) continue;
        auto ix = ell_index(*g, N, m);
        std::map<IJ, int> brute;
        for (int i = 1; i <= g->n; ++i)
          for (int j = -50; j <= 200; ++j) {
            const int d = g->degrees[i - 1];
            long l = static_cast<long>(d - 1) * N + static_cast<long>(m) * (d - 1 - j);
            if (l >= -N && l <= -1) brute[{i, j}] = static_cast<int>(l);
          }
        EXPECT_EQ(ix.ell, brute) << name << " " << N << "/" << m;
        for (auto& ij : ix.A) EXPECT_GT(ix.ell.at(ij), -N);
        EXPECT_EQ(ix.At.size(), ix.ell.size());
      }
  }
}

TEST(Oper, DimMatchSmall) {
  for (auto name : {"A1", "A2", "B2"}) {
    auto g = build_algebra<Cyc>(name);
    for (int m : regular_elliptic_numbers(*g))
      for (int N = 1; N <= m + 1; ++N)
        if (std::gcd(N, m) == 1) EXPECT_TRUE(dim_match_check(*g, m, N).pass) << name << " " << N << "/" << m;
  }
}

TEST(Oper, SlopeAgreesWithReduction) {
  std::mt19937 rng(21);
  auto g = build_algebra<Cyc>("A2");
  for (auto [N, m] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {4, 3}, {1, 2}, {1, 1}}) {
    auto op = random_supported_oper(g, N, m, rng);
    EXPECT_EQ(reduced_slope(op), Rational(N, m)) << N << "/" << m;
  }
}

TEST(Oper, MinimalRoundTrip) {
  std::mt19937 rng(5);
  for (auto [name, N, m] : std::vector<std::tuple<const char*, int, int>>{{"A1", 3, 2}, {"A1", 5, 2}, {"A2", 4, 3}, {"A2", 2, 3}}) {
    auto g = build_algebra<Cyc>(name);
    for (int s = 0; s < 3; ++s) {
      auto op = random_minimal_oper(g, N, m, rng);
      auto cf = oper_to_canonical(op).reduction.form;
      ASSERT_TRUE(is_isoclinic(cf));
      auto res = canonical_to_minimal_oper(cf);
      EXPECT_TRUE(same_oper(res.oper, op)) << name << " " << N << "/" << m;
      for (auto& [l, M] : res.blocks) EXPECT_TRUE(inverse(M).has_value()) << l;
    }
  }
}

TEST(Oper, MinimalFormRejectsBadSupport) {
  auto g = build_algebra<Cyc>("A1");
  EXPECT_THROW(minimal_oper_form(g, 3, 2, {{{1, 3}, Cyc(1)}}, {}), DomainError);
  EXPECT_THROW(minimal_oper_form(g, 3, 2, {{{1, 4}, Cyc(1)}}, {{{1, 0}, Cyc(1)}}), DomainError);
}

TEST(Oper, FiberIndependence) {
  std::mt19937 rng(8);
  for (auto [name, N, m] : std::vector<std::tuple<const char*, int, int>>{{"A1", 3, 2}, {"A2", 4, 3}}) {
    auto g = build_algebra<Cyc>(name);
    auto a = random_minimal_oper(g, N, m, rng);
    auto b = a;
    for (auto& [ij, c] : random_tail(*g, N, m, rng)) b.set(ij.first, ij.second, c);
    EXPECT_EQ(oper_slope(b), oper_slope(a));
    EXPECT_TRUE(fiber_independence_check(a, b)) << name;
  }
}

TEST(Oper, SlopeZeroRejected) {
  auto g = build_algebra<Cyc>("A1");
  OperForm<Cyc> op{g, {}};
  op.set(1, 0, Cyc(1));
  EXPECT_THROW(oper_to_canonical(op), DomainError);
}

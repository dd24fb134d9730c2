#include <gtest/gtest.h>

#include "isoclinic/json_io.hpp"
#include "support.hpp"

using namespace isoclinic;
using io::json;

TEST(Json, RationalWireFormat) {
  EXPECT_EQ(io::to_json(Rational(-3, 4)).get<std::string>(), "-3/4");
  EXPECT_EQ(io::rational_from_json(json("5/10")), Rational(1, 2));
  EXPECT_EQ(io::rational_from_json(json(7)), Rational(7));
  EXPECT_THROW(io::rational_from_json(json(0.5)), SchemaError);
}

TEST(Json, CyclotomicRoundTrip) {
  for (auto x : {Cyc::zeta(3), Cyc::zeta(8) + Cyc::zeta(8, 7), Cyc(Rational(2, 3)) * Cyc::zeta(4) + Cyc(1)}) {
    auto j = io::to_json(x);
    EXPECT_EQ(io::scalar_from_json<Cyc>(j), x) << j.dump();
  }
  EXPECT_TRUE(io::to_json(Cyc(Rational(5))).is_string());
  EXPECT_THROW(io::scalar_from_json<Cyc>(json(0.25)), SchemaError);
}

TEST(Json, ComplexForms) {
  EXPECT_EQ(io::scalar_from_json<Complex>(json(1.5)), Complex(1.5, 0));
  EXPECT_EQ(io::scalar_from_json<Complex>(json{{"re", 1.0}, {"im", -2.0}}), Complex(1, -2));
  EXPECT_NEAR(std::abs(io::scalar_from_json<Complex>(io::to_json(Cyc::zeta(4))) - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Json, ElementByLabels) {
  auto g = build_algebra<Cyc>("A1");
  json j = json::object();
  j[g->labels[1]] = "1/2";
  j[g->labels[2]] = 3;
  auto v = io::element_from_json(*g, j);
  EXPECT_EQ(v[1], Cyc(Rational(1, 2)));
  EXPECT_EQ(v[2], Cyc(3));
  EXPECT_TRUE(vec_equal(io::element_from_json(*g, io::to_json(v)), v));
  EXPECT_THROW(io::element_from_json(*g, json{{"Q7", 1}}), SchemaError);
  EXPECT_THROW(io::element_from_json(*g, json::array({1, 2})), SchemaError);
}

TEST(Json, ConnectionRoundTrip) {
  auto g = build_algebra<Cyc>("A2");
  auto c = make_connection<Cyc>(g, 3, {{-4, g->p_minus}, {0, g->kostant[0]}});
  auto back = io::connection_from_json(g, io::to_json(c));
  EXPECT_EQ(back.A.ram, 3);
  EXPECT_TRUE(series_equal(back.A, c.A, 5));
}

TEST(Json, OperRoundTrip) {
  auto g = build_algebra<Cyc>("A2");
  OperForm<Cyc> op{g, {}};
  op.set(2, 6, Cyc::zeta(3));
  op.set(1, 3, Cyc(Rational(-1, 7)));
  auto back = io::oper_from_json(g, io::to_json(op));
  EXPECT_TRUE(testsupport::same_oper(back, op));
}

TEST(Json, CanonicalFormIsByteStable) {
  auto g = build_algebra<Cyc>("A1");
  auto c = make_connection<Cyc>(g, 2, {{-3, add(g->basis(1), g->basis(2))}});
  auto a = io::to_json(reduce_to_canonical(c).form).dump();
  auto b = io::to_json(reduce_to_canonical(c).form).dump();
  EXPECT_EQ(a, b);
  auto cf = reduce_to_canonical(io::canonical_connection_from_json(g, json::parse(a))).form;
  EXPECT_EQ(io::to_json(cf).dump(), a);
}

TEST(Json, CharacterRoundTrip) {
  auto d = std::make_shared<const ToralDatum<Cyc>>(build_toral_datum<Cyc>(build_algebra<Cyc>("A1"), 2, 3));
  std::mt19937 rng(1);
  auto phi = random_character(d, rng);
  auto back = io::character_from_json(d, io::to_json(phi));
  EXPECT_TRUE(character_equal(back, phi));
  EXPECT_THROW(io::character_from_json(d, json{{"x", json::array()}}), SchemaError);
}

TEST(Json, GlobalConnectionRoundTrip) {
  auto g = build_algebra<Cyc>("A2");
  auto gc = ks_airy(g);
  auto back = io::global_from_json(g, io::to_json(gc));
  ASSERT_EQ(back.coeff.size(), gc.coeff.size());
  for (auto& [e, v] : gc.coeff) EXPECT_TRUE(vec_equal(back.coeff.at(e), v));
}

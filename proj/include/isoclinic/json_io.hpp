#pragma once

#include <json.hpp>

#include "isoclinic/airy.hpp"

namespace isoclinic::io {

using json = nlohmann::json;

// ---- scalars ----

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Cyc& x) {
  Cyc c = x.canonical();
  if (c.is_rational()) return to_string(c.rational());
  json coeffs = json::array();
  for (auto& q : c.coeffs()) coeffs.push_back(to_string(q));
  return json{{"order", c.order()}, {"coeffs", coeffs}};
}

inline json to_json(const Complex& z) {
  if (z.imag() == 0.0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  return rational_from_json(j);
}

template <>
inline Cyc scalar_from_json<Cyc>(const json& j) {
  if (j.is_object()) {
    if (!j.contains("order") || !j.contains("coeffs")) throw SchemaError("cyclotomic scalar needs \"order\" and \"coeffs\"");
    std::vector<Rational> c;
    for (auto& x : j.at("coeffs")) c.push_back(rational_from_json(x));
    return Cyc(j.at("order").get<int>(), c);
  }
  if (j.is_number_float()) throw SchemaError("floating point literal in exact mode: " + j.dump());
  return Cyc(rational_from_json(j));
}

template <>
inline Complex scalar_from_json<Complex>(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_string()) return Complex(parse_rational(j.get<std::string>()).get_d(), 0.0);
  if (j.is_object()) {
    if (j.contains("re") || j.contains("im")) return Complex(j.value("re", 0.0), j.value("im", 0.0));
    return scalar_from_json<Cyc>(j).to_complex();
  }
  throw SchemaError("expected a scalar, got " + j.dump());
}

template <class S>
json to_json(const Vec<S>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

// dense list in basis order, or an object keyed by basis labels
template <class S>
Vec<S> element_from_json(const SimpleLieAlgebra<S>& g, const json& j) {
  auto v = g.zero();
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != g.dim) throw SchemaError("element has " + std::to_string(j.size()) + " entries, expected " + std::to_string(g.dim));
    for (int k = 0; k < g.dim; ++k) v[k] = scalar_from_json<S>(j[k]);
    return v;
  }
  if (j.is_object()) {
    for (auto& [key, val] : j.items()) {
      auto it = std::find(g.labels.begin(), g.labels.end(), key);
      if (it == g.labels.end()) throw SchemaError("unknown basis label " + key);
      v[it - g.labels.begin()] += scalar_from_json<S>(val);
    }
    return v;
  }
  throw SchemaError("expected an algebra element");
}

template <class S>
Vec<S> vector_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array");
  Vec<S> v;
  for (auto& x : j) v.push_back(scalar_from_json<S>(x));
  return v;
}

// ---- series and connections ----

template <class S>
json to_json(const Series<S>& s) {
  json terms = json::array();
  for (auto& [k, c] : s.terms) terms.push_back({{"exp", k}, {"coeff", to_json(c)}});
  json out{{"ram", s.ram}, {"terms", terms}};
  if (s.prec < kExact) out["precision"] = s.prec;
  return out;
}

template <class S>
json to_json(const LieSeries<S>& s) {
  json terms = json::array();
  for (auto& [k, v] : s.terms) terms.push_back({{"exp", k}, {"value", to_json(v)}});
  json out{{"ram", s.ram}, {"terms", terms}};
  if (s.prec < kExact) out["precision"] = s.prec;
  return out;
}

template <class S>
LieSeries<S> lie_series_from_json(const SimpleLieAlgebra<S>& g, const json& j) {
  const int ram = j.value("ram", 1);
  if (ram < 1) throw SchemaError("ram must be positive");
  LieSeries<S> s(g.dim, ram, j.value("precision", kExact));
  if (!j.contains("terms")) throw SchemaError("series needs \"terms\"");
  for (auto& t : j.at("terms")) s.add_to(t.at("exp").get<int>(), element_from_json(g, t.at("value")));
  return s;
}

template <class S>
json to_json(const FormalConnection<S>& c) {
  json out = to_json(c.A);
  out["algebra"] = c.g->type.name();
  return out;
}

template <class S>
FormalConnection<S> connection_from_json(std::shared_ptr<const SimpleLieAlgebra<S>> g, const json& j) {
  return {g, lie_series_from_json(*g, j)};
}

inline std::string atom_kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::ExpNilpotent: return "exp_nilpotent";
    case AtomKind::CocharacterPower: return "cocharacter";
    case AtomKind::Constant: return "constant";
    case AtomKind::Ramify: return "ramify";
    case AtomKind::Unramify: return "unramify";
  }
  return "?";
}

template <class S>
json to_json(const GaugeWord<S>& w) {
  json a = json::array();
  for (auto& at : w) {
    json x{{"kind", atom_kind_name(at.kind)}};
    if (at.kind == AtomKind::ExpNilpotent || at.kind == AtomKind::CocharacterPower) {
      x["element"] = to_json(at.x);
      x["power"] = at.k;
    } else if (at.kind == AtomKind::Constant) {
      json rows = json::array();
      for (int r = 0; r < at.M.rows; ++r) rows.push_back(to_json(at.M.row(r)));
      x["matrix"] = rows;
    } else {
      x["factor"] = at.b;
    }
    a.push_back(x);
  }
  return a;
}

template <class S>
json to_json(const CanonicalForm<S>& cf) {
  json terms = json::array();
  for (int i = 0; i < cf.k(); ++i)
    terms.push_back({{"slope", to_string(cf.slopes[i])}, {"exp", cf.exponent(i)}, {"D", to_json(cf.D[i])}, {"class", to_json(cf.Dn[i])}});
  json out{{"algebra", cf.g->type.name()},
           {"ram", cf.ram},
           {"irregular", terms},
           {"regular", to_json(cf.regular)},
           {"regular_status", cf.regular_status},
           {"weakly_z_reduced", cf.weakly_z_reduced},
           {"isoclinic", is_isoclinic(cf)}};
  if (cf.regular_normalized) out["regular_class"] = to_json(cf.regular_n);
  if (cf.precision < kExact) out["precision"] = cf.precision;
  return out;
}

// A canonical form read back as the connection d + (sum D_i u^{e_i} + D_{k+1}) du/u.
template <class S>
FormalConnection<S> canonical_connection_from_json(std::shared_ptr<const SimpleLieAlgebra<S>> g, const json& j) {
  FormalConnection<S> c{g, LieSeries<S>(g->dim, j.value("ram", 1), 1)};
  for (auto& t : j.at("irregular")) c.A.add_to(t.at("exp").get<int>(), element_from_json(*g, t.at("D")));
  if (j.contains("regular")) c.A.add_to(0, element_from_json(*g, j.at("regular")));
  return c;
}

template <class S>
json to_json(const RefinedData<S>& r) {
  json I = json::array(), R = json::array(), X = json::array();
  for (int i : r.I) I.push_back(i);
  for (auto& q : r.R) R.push_back(to_string(q));
  for (auto& x : r.X) X.push_back(to_json(x));
  return {{"I", I}, {"slopes", R}, {"X", X}, {"levi_dims", r.levi_dims}, {"generic", r.generic}};
}

// ---- opers ----

template <class S>
json to_json(const OperForm<S>& op) {
  json v = json::array();
  for (auto& [ij, c] : op.v) v.push_back({{"i", ij.first}, {"j", ij.second}, {"value", to_json(c)}});
  return {{"algebra", op.g->type.name()}, {"v", v}};
}

template <class S>
std::map<IJ, S> coefficients_from_json(const json& j) {
  std::map<IJ, S> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw SchemaError("coefficient table must be an array of {i, j, value}");
  for (auto& e : j) out[{e.at("i").get<int>(), e.at("j").get<int>()}] = scalar_from_json<S>(e.at("value"));
  return out;
}

template <class S>
OperForm<S> oper_from_json(std::shared_ptr<const SimpleLieAlgebra<S>> g, const json& j) {
  OperForm<S> op{g, {}};
  for (auto& [ij, c] : coefficients_from_json<S>(j.value("v", json::array()))) {
    if (ij.first < 1 || ij.first > g->n) throw SchemaError("oper index i out of range");
    op.set(ij.first, ij.second, c);
  }
  return op;
}

template <class S>
json coefficients_to_json(const std::map<IJ, S>& m) {
  json v = json::array();
  for (auto& [ij, c] : m) v.push_back({{"i", ij.first}, {"j", ij.second}, {"value", to_json(c)}});
  return v;
}

// ---- K-types ----

template <class S>
json to_json(const GradedLattice<S>& L, const ToralDatum<S>& d) {
  json pieces = json::object();
  for (int i = L.lowest(); i < L.tail; ++i) {
    json b = json::array();
    for (auto& x : L.at(d, i)) b.push_back(to_json(x));
    pieces[std::to_string(i)] = b;
  }
  return {{"pieces", pieces}, {"full_from", L.tail}};
}

template <class S>
json to_json(const ToralDatum<S>& d) {
  json t = json::object(), tau = json::object();
  for (int i = 0; i < d.m; ++i) {
    json a = json::array(), b = json::array();
    for (auto& x : d.tY[i]) a.push_back(to_json(x));
    for (auto& x : d.tau[i]) b.push_back(to_json(x));
    t[std::to_string(i)] = a;
    tau[std::to_string(i)] = b;
  }
  return {{"algebra", d.g->type.name()}, {"m", d.m}, {"N", d.N}, {"Y", to_json(d.Y)}, {"lambda", to_json(d.lambda)},
          {"t_Y", t}, {"tau", tau}, {"checks", d.checks}};
}

template <class S>
json to_json(const KTypeLattices<S>& L, const ToralDatum<S>& d) {
  json lag = json::array(), eig = json::array();
  for (auto& x : L.lagrangian) lag.push_back(to_json(x));
  for (auto& c : L.lagrangian_eigenvalues) eig.push_back(to_json(c));
  return {{"j_prime", to_json(L.jprime, d)}, {"j", to_json(L.j, d)}, {"j_plus_perp", to_json(L.jplus_perp, d)},
          {"j_perp", to_json(L.jperp, d)}, {"lagrangian", lag}, {"lagrangian_eigenvalues", eig},
          {"bj_dim", L.bj_dim}, {"checks", L.checks}};
}

template <class S>
json to_json(const ToralCharacter<S>& c) {
  json o = json::object();
  for (auto& [i, v] : c.comp) o[std::to_string(i)] = to_json(v);
  return o;
}

template <class S>
ToralCharacter<S> character_from_json(std::shared_ptr<const ToralDatum<S>> d, const json& j) {
  std::map<int, Vec<S>> comps;
  if (!j.is_null()) {
    if (!j.is_object()) throw SchemaError("character must be an object {i: t_Y-coordinates}");
    for (auto& [key, val] : j.items()) {
      int i = 0;
      try {
        i = std::stoi(key);
      } catch (...) {
        throw SchemaError("character key is not an integer: " + key);
      }
      comps[i] = vector_from_json<S>(val);
    }
  }
  return make_character(d, comps);
}

template <class S>
json to_json(const HitchinPoint<S>& hp) {
  json a = json::array();
  for (std::size_t i = 0; i < hp.h.size(); ++i) {
    json terms = json::array();
    for (auto& [k, c] : hp.h[i].terms) {
      Rational e(k, hp.ram);
      e.canonicalize();
      terms.push_back({{"t_exp", to_string(e)}, {"coeff", to_json(c)}});
    }
    a.push_back({{"degree", hp.degrees[i]}, {"terms", terms}});
  }
  return a;
}

template <class S>
json to_json(const GlobalConnection<S>& gc) {
  json terms = json::array();
  for (auto& [e, v] : gc.coeff) terms.push_back({{"exp", e}, {"value", to_json(v)}});
  return {{"algebra", gc.g->type.name()}, {"chart", gc.chart}, {"terms", terms}};
}

template <class S>
GlobalConnection<S> global_from_json(std::shared_ptr<const SimpleLieAlgebra<S>> g, const json& j) {
  GlobalConnection<S> gc{g, {}, j.value("chart", std::string("t"))};
  for (auto& t : j.at("terms")) gc.add(t.at("exp").get<int>(), element_from_json(*g, t.at("value")));
  return gc;
}

}  // namespace isoclinic::io

#pragma once

#include "isoclinic/hitchin.hpp"

namespace isoclinic {

// d + (sum_e B_e t^e) dt on P^1 - {0}, finite support
template <class S>
struct GlobalConnection {
  std::shared_ptr<const SimpleLieAlgebra<S>> g;
  std::map<int, Vec<S>> coeff;
  std::string chart = "t";

  void add(int e, const Vec<S>& v, const S& c = from_int<S>(1)) {
    auto it = coeff.find(e);
    if (it == coeff.end()) {
      if (!Field<S>::is_zero(c) && !is_zero(v)) coeff[e] = scale(v, c);
      return;
    }
    axpy(it->second, c, v);
    if (is_zero(it->second)) coeff.erase(it);
  }
};

// d + (t^{-2} p_{-1} + v t^{-3} p_n + sum_i w_i t^{-2} p_i) dt
template <class S>
GlobalConnection<S> airy_family(std::shared_ptr<const SimpleLieAlgebra<S>> g, const S& vn, const std::map<int, S>& lower = {}) {
  auto lead = g->p_minus;
  axpy(lead, vn, g->kostant[g->n - 1]);
  if (!is_regular_semisimple(*g, lead)) throw DomainError("LeadingNotRegularSemisimple", "p_{-1} + v p_n is not regular semisimple");
  GlobalConnection<S> gc{g, {}, "t"};
  gc.add(-2, g->p_minus);
  gc.add(-3, g->kostant[g->n - 1], vn);
  for (auto& [i, c] : lower) {
    if (i < 1 || i > g->n) throw SchemaError("Kostant index out of range");
    gc.add(-2, g->kostant[i - 1], c);
  }
  return gc;
}

template <class S>
GlobalConnection<S> ks_airy(std::shared_ptr<const SimpleLieAlgebra<S>> g) {
  return airy_family(g, from_int<S>(1));
}

// p_{-1} at t^{-2}, v_{i,j} p_i at t^{-j+2d_i-3}
template <class S>
GlobalConnection<S> globalize(const OperForm<S>& op, const Rational& nu) {
  const auto& g = *op.g;
  const int N = static_cast<int>(nu.get_num().get_si()), m = static_cast<int>(nu.get_den().get_si());
  auto ix = ell_index(g, N, m);
  for (auto& [ij, c] : op.v)
    if (!ix.At.count(ij)) throw DomainError("NotMinimalForm", "coefficient v_{" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "} is outside the minimal support");
  auto K = g.p_minus;
  for (auto& ij : ix.block(-N)) axpy(K, op.get(ij.first, ij.second), g.kostant[ij.first - 1]);
  if (!is_regular_semisimple(g, K)) throw DomainError("NotMinimalForm", "leading Kostant element is not regular semisimple");
  GlobalConnection<S> gc{op.g, {}, "t"};
  gc.add(-2, g.p_minus);
  for (auto& [ij, c] : op.v) gc.add(-ij.second + 2 * g.degrees[ij.first - 1] - 3, g.kostant[ij.first - 1], c);
  return gc;
}

// A(u) du/u = B(t) dt with t = u^m: A(u) = m u^m B(u^m)
template <class S>
FormalConnection<S> restrict_to_zero(const GlobalConnection<S>& gc, int m) {
  FormalConnection<S> c{gc.g, LieSeries<S>(gc.g->dim, m, kExact)};
  for (auto& [e, v] : gc.coeff) c.A.add_to(m * (e + 1), v, from_int<S>(m));
  return c;
}

struct InfinityReport {
  std::vector<int> s_exponents;  // exponents of s in the ds-coefficient, s = 1/t
  bool regular = false;          // at most a simple pole
  bool holomorphic = false;
  bool trivial_monodromy = false;
  std::string certificate;       // "holomorphic" or "not certified"
  bool slope_at_least_one = false;
};

// t^e dt = -s^{-e-2} ds
template <class S>
InfinityReport infinity_check(const GlobalConnection<S>& gc, const Rational& nu) {
  InfinityReport r;
  int lowest = 0;
  for (auto& [e, v] : gc.coeff) {
    r.s_exponents.push_back(-e - 2);
    lowest = std::min(lowest, -e - 2);
  }
  std::sort(r.s_exponents.begin(), r.s_exponents.end());
  r.regular = lowest >= -1;
  r.holomorphic = lowest >= 0;
  r.trivial_monodromy = r.holomorphic;
  r.certificate = r.holomorphic ? "holomorphic" : "not certified";
  r.slope_at_least_one = nu >= 1;
  return r;
}

// the connection at infinity, d + C(s) ds
template <class S>
GlobalConnection<S> at_infinity(const GlobalConnection<S>& gc) {
  GlobalConnection<S> r{gc.g, {}, "s"};
  for (auto& [e, v] : gc.coeff) r.add(-e - 2, v, from_int<S>(-1));
  return r;
}

// Airy family as a minimal oper form at slope (1+h)/h.
template <class S>
OperForm<S> airy_oper(std::shared_ptr<const SimpleLieAlgebra<S>> g, const S& vn, const std::map<int, S>& lower = {}) {
  OperForm<S> op{g, {}};
  op.set(g->n, 2 * g->coxeter, vn);
  for (auto& [i, c] : lower) op.set(i, 2 * g->degrees[i - 1] - 1, c);
  return op;
}

}  // namespace isoclinic

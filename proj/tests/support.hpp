#pragma once

// Shared generators and independent checks for the unit tests and the acceptance driver.

#include <numeric>
#include <random>

#include "isoclinic/airy.hpp"

namespace testsupport {

using namespace isoclinic;

inline const std::vector<std::string>& all_types() {
  static const std::vector<std::string> t{"A1", "A2", "A3", "B2", "C2", "G2"};
  return t;
}

inline Cyc small_int(std::mt19937& rng, int range, bool nonzero) {
  std::uniform_int_distribution<int> U(-range, range);
  int v = 0;
  do v = U(rng);
  while (nonzero && v == 0);
  return Cyc(Rational(v));
}

// ---- structural invariants, checked on basis triples ----

template <class S>
bool jacobi_holds(const SimpleLieAlgebra<S>& g) {
  for (int a = 0; a < g.dim; ++a)
    for (int b = a + 1; b < g.dim; ++b) {
      auto ab = g.bracket(g.basis(a), g.basis(b));
      for (int c = b + 1; c < g.dim; ++c) {
        auto x = g.bracket(g.basis(a), g.bracket(g.basis(b), g.basis(c)));
        auto y = g.bracket(g.basis(b), g.bracket(g.basis(c), g.basis(a)));
        auto z = g.bracket(g.basis(c), ab);
        if (!is_zero(add(add(x, y), z))) return false;
      }
    }
  return true;
}

template <class S>
bool killing_invariant(const SimpleLieAlgebra<S>& g) {
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto ab = g.bracket(g.basis(a), g.basis(b));
      for (int c = 0; c < g.dim; ++c)
        if (!Field<S>::is_zero(g.kappa(ab, g.basis(c)) - g.kappa(g.basis(a), g.bracket(g.basis(b), g.basis(c))))) return false;
    }
  return true;
}

// (p_1, 2 rho_check, p_{-1}) is an sl2 triple
template <class S>
bool principal_triple(const SimpleLieAlgebra<S>& g) {
  auto h = scale(g.rho_check, from_int<S>(2));
  return vec_equal(g.bracket(h, g.p_plus), scale(g.p_plus, from_int<S>(2))) &&
         vec_equal(g.bracket(h, g.p_minus), scale(g.p_minus, from_int<S>(-2))) && vec_equal(g.bracket(g.p_plus, g.p_minus), h);
}

// [g_i, g_j] in g_{i+j} for the height grading mod m
template <class S>
bool grading_multiplicative(const SimpleLieAlgebra<S>& g, int m) {
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto x = g.bracket(g.basis(a), g.basis(b));
      for (int k = 0; k < g.dim; ++k)
        if (!Field<S>::is_zero(x[k]) && mod(g.height[k] - g.height[a] - g.height[b], m) != 0) return false;
    }
  return true;
}

// |Z_W(w)| for a regular elliptic w of order m, computed on the Weyl group side
template <class S>
std::size_t regular_centralizer_order(const SimpleLieAlgebra<S>& g, int m) {
  auto W = weyl_group(g);
  for (auto& w : W) {
    if (w.order != m || !is_elliptic(g, w) || !is_regular_element(g, w)) continue;
    std::size_t c = 0;
    for (auto& v : W) c += (w.matrix * v.matrix).a == (v.matrix * w.matrix).a;
    return c;
  }
  return 0;
}

// ---- opers ----

template <class S>
std::map<IJ, S> random_block(const IndexSet& ix, int l, std::mt19937& rng, int range, bool nonzero) {
  std::map<IJ, S> out;
  for (auto& ij : ix.block(l)) {
    auto c = small_int(rng, range, nonzero);
    if (!Field<Cyc>::is_zero(c)) out[ij] = c;
  }
  return out;
}

// random oper with support in the extended index set and a regular semisimple leading term
template <class S>
OperForm<S> random_minimal_oper(std::shared_ptr<const SimpleLieAlgebra<S>> g, int N, int m, std::mt19937& rng, int range = 3) {
  auto ix = ell_index(*g, N, m);
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto lead = random_block<S>(ix, -N, rng, range, true);
    std::map<IJ, S> lower;
    for (int l = -N + 1; l <= -1; ++l)
      for (auto& [ij, c] : random_block<S>(ix, l, rng, range, false)) lower[ij] = c;
    try {
      return minimal_oper_form(g, N, m, lead, lower);
    } catch (const DomainError&) {
    }
  }
  throw std::runtime_error("no regular semisimple leading term found");
}

// random oper of exact slope N/m with support in the extended index set, leading term unrestricted
template <class S>
OperForm<S> random_supported_oper(std::shared_ptr<const SimpleLieAlgebra<S>> g, int N, int m, std::mt19937& rng, int range = 3) {
  auto ix = ell_index(*g, N, m);
  OperForm<S> op{g, {}};
  while (op.v.empty())
    for (auto& [ij, c] : random_block<S>(ix, -N, rng, range, false)) op.set(ij.first, ij.second, c);
  for (int l = -N + 1; l <= -1; ++l)
    for (auto& [ij, c] : random_block<S>(ix, l, rng, range, false)) op.set(ij.first, ij.second, c);
  return op;
}

// slope of the reduced canonical form, zero when no irregular part survives
template <class S>
Rational reduced_slope(const OperForm<S>& op) {
  auto nu = oper_slope(op);
  auto c = oper_connection(op, static_cast<int>(nu.get_den().get_si()));
  auto cf = reduce_to_canonical(c).form;
  return cf.k() == 0 ? Rational(0) : cf.slopes[0];
}

// coefficients v_{i,j} of a random oper with ell(i,j) >= 0 (at most `count` of them)
template <class S>
std::map<IJ, S> random_tail(const SimpleLieAlgebra<S>& g, int N, int m, std::mt19937& rng, int count = 4) {
  std::vector<IJ> cand;
  for (int i = 1; i <= g.n; ++i) {
    const int d = g.degrees[i - 1];
    for (int j = -2; j <= 3 * d + 2; ++j)
      if (ell_value(d, N, m, j) >= 0) cand.push_back({i, j});
  }
  std::shuffle(cand.begin(), cand.end(), rng);
  std::map<IJ, S> out;
  for (int k = 0; k < count && k < static_cast<int>(cand.size()); ++k) out[cand[k]] = small_int(rng, 5, true);
  return out;
}

// ---- characters ----

template <class S>
ToralCharacter<S> random_regular_character(std::shared_ptr<const ToralDatum<S>> d, std::mt19937& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto phi = random_character(d, rng, true);
    if (is_regular_semisimple(*d->g, phi.component(-d->N))) return phi;
  }
  throw std::runtime_error("no regular leading component found");
}

template <class S>
bool same_hitchin(const std::map<IJ, S>& a, const std::map<IJ, S>& b) {
  if (a.size() != b.size()) return false;
  for (auto& [ij, v] : a) {
    auto it = b.find(ij);
    if (it == b.end() || !Field<S>::is_zero(it->second - v)) return false;
  }
  return true;
}

template <class S>
bool same_oper(const OperForm<S>& a, const OperForm<S>& b) {
  return same_hitchin(a.v, b.v);
}

// the two lists contain the same characters (no duplicates assumed)
template <class S>
bool same_set(const std::vector<ToralCharacter<S>>& a, const std::vector<ToralCharacter<S>>& b) {
  if (a.size() != b.size()) return false;
  for (auto& x : a) {
    int hits = 0;
    for (auto& y : b) hits += character_equal(x, y);
    if (hits != 1) return false;
  }
  return true;
}

template <class S>
std::vector<ToralCharacter<S>> orbit(const ToralCharacter<S>& phi, const std::vector<TorusElement<S>>& W) {
  std::vector<ToralCharacter<S>> out;
  for (auto& w : W) {
    auto x = torus_act(w, phi);
    bool dup = false;
    for (auto& y : out) dup = dup || character_equal(x, y);
    if (!dup) out.push_back(x);
  }
  return out;
}

}  // namespace testsupport

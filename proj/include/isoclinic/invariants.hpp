#pragma once

#include "isoclinic/liealg.hpp"
#include "isoclinic/series.hpp"

namespace isoclinic {

// Sparse multivariate polynomial in c_1..c_n.
template <class S>
struct MPoly {
  std::map<std::vector<int>, S> terms;
  int nvars = 0;

  static MPoly constant(int n, const S& c) {
    MPoly p;
    p.nvars = n;
    if (!Field<S>::is_zero(c)) p.terms[std::vector<int>(n, 0)] = c;
    return p;
  }
  static MPoly variable(int n, int i) {
    MPoly p;
    p.nvars = n;
    std::vector<int> e(n, 0);
    e[i] = 1;
    p.terms[e] = from_int<S>(1);
    return p;
  }
  void add(const std::vector<int>& e, const S& c) {
    if (Field<S>::is_zero(c)) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms[e] = c;
    } else {
      it->second += c;
      if (Field<S>::is_zero(it->second)) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
};

template <class S>
MPoly<S> operator+(MPoly<S> a, const MPoly<S>& b) {
  for (auto& [e, c] : b.terms) a.add(e, c);
  return a;
}

template <class S>
MPoly<S> operator*(const MPoly<S>& a, const MPoly<S>& b) {
  MPoly<S> r;
  r.nvars = a.nvars;
  for (auto& [ea, ca] : a.terms)
    for (auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

// Evaluate in any commutative ring R with R(one) and scalar action.
template <class S, class R>
R evaluate(const MPoly<S>& p, const std::vector<R>& x, const R& one) {
  R acc = from_int<S>(0) * one;
  for (auto& [e, c] : p.terms) {
    R m = c * one;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m = m * x[i];
    acc = acc + m;
  }
  return acc;
}

// Triangular change of basis from trace invariants to Kostant-section
// coordinates: tau_{d_i}(p_{-1} + sum c_j p_j) = alpha_i c_i + Q_i(c_1..c_{i-1}).
template <class S>
struct SectionInvariants {
  bool use_defining = false;  // defining representation (type A) or adjoint
  std::vector<S> alpha;
  std::vector<MPoly<S>> Q;
};

namespace detail {

template <class S>
SectionInvariants<S> build_section_invariants(const SimpleLieAlgebra<S>& g) {
  SectionInvariants<S> inv;
  inv.use_defining = g.type.letter == 'A';
  const int n = g.n;
  auto rep_of = [&](const Vec<S>& x) { return inv.use_defining ? g.represent(x) : g.ad(x); };
  Mat<S> P = rep_of(g.p_minus);
  std::vector<Mat<S>> Pi;
  for (auto& p : g.kostant) Pi.push_back(rep_of(p));
  const int d = P.rows;
  using MP = MPoly<S>;
  std::vector<MP> K(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d * d; ++i) {
    K[i] = MP::constant(n, P.a[i]);
    for (int j = 0; j < n; ++j)
      if (!Field<S>::is_zero(Pi[j].a[i])) K[i] = K[i] + MP::constant(n, Pi[j].a[i]) * MP::variable(n, j);
  }
  auto mul = [&](const std::vector<MP>& A, const std::vector<MP>& B) {
    std::vector<MP> C(static_cast<std::size_t>(d) * d, MP::constant(n, from_int<S>(0)));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        if (A[i * d + k].is_zero()) continue;
        for (int j = 0; j < d; ++j)
          if (!B[k * d + j].is_zero()) C[i * d + j] = C[i * d + j] + A[i * d + k] * B[k * d + j];
      }
    return C;
  };
  std::vector<MP> pw = K;
  int cur = 1;
  for (int i = 0; i < n; ++i) {
    while (cur < g.degrees[i]) {
      pw = mul(pw, K);
      ++cur;
    }
    MP tr = MP::constant(n, from_int<S>(0));
    for (int a = 0; a < d; ++a) tr = tr + pw[a * d + a];
    std::vector<int> ei(n, 0);
    ei[i] = 1;
    S a = from_int<S>(0);
    MP rest;
    rest.nvars = n;
    for (auto& [e, c] : tr.terms) {
      if (e == ei) {
        a = c;
        continue;
      }
      for (int j = i; j < n; ++j)
        if (e[j] != 0) throw std::logic_error("trace invariant is not triangular in section coordinates");
      rest.add(e, c);
    }
    if (Field<S>::is_zero(a)) throw std::logic_error("trace invariant does not detect the section coordinate");
    inv.alpha.push_back(a);
    inv.Q.push_back(rest);
  }
  return inv;
}

}  // namespace detail

template <class S>
const SectionInvariants<S>& section_invariants(const SimpleLieAlgebra<S>& g) {
  std::call_once(g.invariant_once, [&] { g.invariant_cache = std::make_shared<SectionInvariants<S>>(detail::build_section_invariants(g)); });
  return *static_cast<const SectionInvariants<S>*>(g.invariant_cache.get());
}

// Section coordinates from the trace invariants tau_{d_i}, in any ring R.
template <class S, class R>
std::vector<R> section_from_traces(const SectionInvariants<S>& inv, const std::vector<R>& tau, const R& one) {
  std::vector<R> c;
  for (std::size_t i = 0; i < inv.alpha.size(); ++i) {
    R q = evaluate(inv.Q[i], c, one);
    c.push_back((from_int<S>(1) / inv.alpha[i]) * (tau[i] - q));
  }
  return c;
}

// Kostant-section coordinates of x: the unique (c_i) with x conjugate-invariantly
// matching p_{-1} + sum c_i p_i.
template <class S>
std::vector<S> invariant_coordinates(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  const auto& inv = section_invariants(g);
  Mat<S> X = inv.use_defining ? g.represent(x) : g.ad(x);
  std::vector<S> tau;
  Mat<S> P = X;
  int cur = 1;
  for (int i = 0; i < g.n; ++i) {
    while (cur < g.degrees[i]) {
      P = P * X;
      ++cur;
    }
    tau.push_back(trace(P));
  }
  return section_from_traces(inv, tau, from_int<S>(1));
}

template <class S>
Vec<S> kostant_element(const SimpleLieAlgebra<S>& g, const std::vector<S>& c) {
  Vec<S> x = g.p_minus;
  for (int i = 0; i < g.n; ++i) axpy(x, c[i], g.kostant[i]);
  return x;
}

}  // namespace isoclinic

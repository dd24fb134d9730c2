#pragma once

#include <random>

#include "isoclinic/connection.hpp"

namespace isoclinic {

using IJ = std::pair<int, int>;  // (i, j), i is 1-based

// d + (p_{-1} + sum v_{i,j} t^{-j-1} p_i) dt
template <class S>
struct OperForm {
  std::shared_ptr<const SimpleLieAlgebra<S>> g;
  std::map<IJ, S> v;

  void set(int i, int j, const S& c) {
    if (Field<S>::is_zero(c))
      v.erase({i, j});
    else
      v[{i, j}] = c;
  }
  S get(int i, int j) const {
    auto it = v.find({i, j});
    return it == v.end() ? from_int<S>(0) : it->second;
  }
};

template <class S>
Rational oper_slope(const OperForm<S>& op) {
  Rational best = 0;
  for (auto& [ij, c] : op.v) {
    if (Field<S>::is_zero(c)) continue;
    Rational s(ij.second + 1, op.g->degrees[ij.first - 1]);
    s -= 1;
    s.canonicalize();
    best = std::max(best, s);
  }
  return best;
}

struct IndexSet {
  int N = 1, m = 1;
  std::map<IJ, int> ell;  // all (i,j) with -N <= ell <= -1
  std::set<IJ> A, At;     // A_nu and its extension by ell = -N
  std::vector<IJ> block(int l) const {
    std::vector<IJ> out;
    for (auto& [ij, x] : ell)
      if (x == l) out.push_back(ij);
    return out;
  }
};

inline long ell_value(int d, int N, int m, int j) { return static_cast<long>(d - 1) * N + static_cast<long>(m) * (d - 1 - j); }

inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

template <class S>
IndexSet ell_index(const SimpleLieAlgebra<S>& g, int N, int m) {
  if (N < 1 || m < 1 || std::gcd(N, m) != 1) throw DomainError("NotCoprime", "N and m must be coprime positive integers");
  IndexSet ix;
  ix.N = N;
  ix.m = m;
  for (int i = 1; i <= g.n; ++i) {
    const int d = g.degrees[i - 1];
    const long top = static_cast<long>(N + m) * (d - 1);
    // -N <= top - m j <= -1
    for (long j = ceil_div(top + 1, m); j <= floor_div(top + N, m); ++j) {
      int l = static_cast<int>(ell_value(d, N, m, static_cast<int>(j)));
      ix.ell[{i, static_cast<int>(j)}] = l;
      ix.At.insert({i, static_cast<int>(j)});
      if (l > -N) ix.A.insert({i, static_cast<int>(j)});
    }
  }
  return ix;
}

// ---- dimension matching ----

struct DimMatchRow {
  int ell = 0;
  int count = 0;     // |A_{nu,ell}|
  int dim = 0;       // dim z(X) cap g_ell
};

struct DimMatchReport {
  std::vector<DimMatchRow> rows;
  bool pass = true;
};

// grading piece attached to u-exponent l: heights congruent to N^{-1} l mod m
inline int inverse_mod(int a, int m) {
  a = mod(a, m);
  for (int x = 0; x < m; ++x)
    if (mod(static_cast<long>(a) * x, m) == 1 % m) return x;
  throw DomainError("NotCoprime", "element is not invertible modulo m");
}

template <class S>
std::vector<Vec<S>> graded_piece(const SimpleLieAlgebra<S>& g, int m, long i) {
  return piece_basis(g, grading_by_principal_cocharacter(g, m), i);
}

// A regular semisimple element of g_i (grading mod m), by seeded search.
template <class S>
std::optional<Vec<S>> find_regular_semisimple(const SimpleLieAlgebra<S>& g, int m, long i, unsigned seed = 1) {
  auto B = graded_piece(g, m, i);
  if (B.empty()) return std::nullopt;
  // the sum of the basis vectors first: for i = -1 that is p_{-1} + E_theta-type elements
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = g.zero();
    for (std::size_t k = 0; k < B.size(); ++k) axpy(x, from_int<S>(trial == 0 ? 1 : dist(rng)), B[k]);
    if (is_zero(x)) continue;
    if (is_regular_semisimple(g, x)) return x;
  }
  return std::nullopt;
}

template <class S>
DimMatchReport dim_match_check(const SimpleLieAlgebra<S>& g, int m, int N) {
  auto ix = ell_index(g, N, m);
  // u-degree l lives in heights congruent to N^{-1} l; the leading degree -N is height -1
  auto X = find_regular_semisimple(g, m, -1);
  if (!X) throw DomainError("NoRegularElement", "no regular semisimple element in the graded piece of degree -N");
  auto z = centralizer(g, {*X});
  DimMatchReport rep;
  for (int l = -N + 1; l <= -1; ++l) {
    DimMatchRow row;
    row.ell = l;
    row.count = static_cast<int>(ix.block(l).size());
    auto piece = graded_piece(g, m, static_cast<long>(l) * inverse_mod(N, m));
    row.dim = static_cast<int>(intersect(z, piece, g.dim).size());
    if (row.count != row.dim) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---- oper -> canonical ----

template <class S>
struct OperReduction {
  FormalConnection<S> shifted;  // after the principal cocharacter gauge
  Reduction<S> reduction;       // word includes the cocharacter gauge
  int N = 0, m = 1;
};

// A(u) du/u for the oper over u = t^{1/m}
template <class S>
FormalConnection<S> oper_connection(const OperForm<S>& op, int m) {
  const auto& g = *op.g;
  FormalConnection<S> c{op.g, LieSeries<S>(g.dim, m, kExact)};
  S mm = from_int<S>(m);
  c.A.add_to(m, g.p_minus, mm);
  for (auto& [ij, val] : op.v) c.A.add_to(-m * ij.second, g.kostant[ij.first - 1], mm * val);
  return c;
}

template <class S>
OperReduction<S> oper_to_canonical(const OperForm<S>& op, const ReduceOptions& opt = {}) {
  Rational nu = oper_slope(op);
  if (nu == 0) throw DomainError("SlopeZero", "oper is regular singular");
  OperReduction<S> out;
  out.N = static_cast<int>(nu.get_num().get_si());
  out.m = static_cast<int>(nu.get_den().get_si());
  auto c = oper_connection(op, out.m);
  auto atom = GaugeAtom<S>::cocharacter(op.g->rho_check, out.N + out.m);
  out.shifted = gauge_transform(c, atom);
  out.reduction = reduce_to_canonical(out.shifted, opt);
  out.reduction.word.insert(out.reduction.word.begin(), atom);
  return out;
}

template <class S>
OperForm<S> minimal_oper_form(std::shared_ptr<const SimpleLieAlgebra<S>> g, int N, int m, const std::map<IJ, S>& leading,
                              const std::map<IJ, S>& lower) {
  auto ix = ell_index(*g, N, m);
  OperForm<S> op{g, {}};
  auto K = g->p_minus;
  for (auto& [ij, c] : leading) {
    auto it = ix.ell.find(ij);
    if (it == ix.ell.end() || it->second != -N) throw DomainError("BadSupport", "leading coefficient outside ell = -N");
    op.set(ij.first, ij.second, c);
    axpy(K, c, g->kostant[ij.first - 1]);
  }
  for (auto& [ij, c] : lower) {
    if (!ix.A.count(ij)) throw DomainError("BadSupport", "lower coefficient outside A_nu");
    op.set(ij.first, ij.second, c);
  }
  if (!is_regular_semisimple(*g, K)) throw DomainError("LeadingNotRegularSemisimple", "leading Kostant element is not regular semisimple");
  return op;
}

namespace detail {

// class representative of the polar coefficient at u-exponent e (zero if absent)
template <class S>
Vec<S> normalized_at(const CanonicalForm<S>& cf, int e) {
  for (int i = 0; i < cf.k(); ++i)
    if (cf.exponent(i) == e) return cf.Dn[i];
  return cf.g->zero();
}

}  // namespace detail

template <class S>
struct MinimalOperResult {
  OperForm<S> oper;
  std::vector<std::pair<int, Mat<S>>> blocks;  // ell -> block matrix phi_ell
};

// Inverse of oper_to_canonical on minimal forms, block by block in increasing ell.
template <class S>
MinimalOperResult<S> canonical_to_minimal_oper(const CanonicalForm<S>& cf) {
  const auto& g = *cf.g;
  if (!is_isoclinic(cf)) throw DomainError("NotIsoclinic", "canonical form is not isoclinic");
  const Rational r1 = cf.slopes[0];
  const int N = static_cast<int>(r1.get_num().get_si()), m = static_cast<int>(r1.get_den().get_si());
  if (cf.ram != m) throw DomainError("BadRamification", "ramification differs from the slope denominator");
  auto ix = ell_index(g, N, m);
  MinimalOperResult<S> res{OperForm<S>{cf.g, {}}, {}};
  auto c = invariant_coordinates(g, scale(cf.D[0], from_frac<S>(1, m)));
  for (int i = 1; i <= g.n; ++i) {
    auto blk = ix.block(-N);
    auto it = std::find_if(blk.begin(), blk.end(), [&](const IJ& p) { return p.first == i; });
    if (it != blk.end())
      res.oper.set(i, it->second, c[i - 1]);
    else if (!Field<S>::is_zero(c[i - 1]))
      throw DomainError("NotInImage", "leading class is not of the graded shape for this slope");
  }
  auto forward = [&](const OperForm<S>& op) { return oper_to_canonical(op).reduction.form; };
  auto base_cf = forward(res.oper);
  if (!vec_equal(base_cf.Dn[0], cf.Dn[0])) throw std::logic_error("leading class was not reproduced");
  auto tK = centralizer(g, {cf.Dn[0]});
  const int Ninv = inverse_mod(N, m);
  for (int l = -N + 1; l <= -1; ++l) {
    auto blk = ix.block(l);
    Vec<S> target = detail::normalized_at(cf, l);
    if (blk.empty()) {
      if (!is_zero(target)) throw DomainError("NotInImage", "canonical form has a term where the oper side has no coefficient");
      continue;
    }
    auto B = intersect(tK, graded_piece(g, m, static_cast<long>(l) * Ninv), g.dim);
    B = span_basis(B, g.dim);
    if (B.size() != blk.size()) throw DomainError("SingularBlock", "block is not square");
    auto coords_in = [&](const Vec<S>& x) {
      auto cc = coordinates(B, x);
      if (!cc) throw std::logic_error("normalized term is outside the graded torus piece");
      return *cc;
    };
    for (auto& p : blk) res.oper.set(p.first, p.second, from_int<S>(0));
    auto base = coords_in(detail::normalized_at(forward(res.oper), l));
    const int k = static_cast<int>(blk.size());
    Mat<S> phi(k, k);
    for (int a = 0; a < k; ++a) {
      auto op = res.oper;
      op.set(blk[a].first, blk[a].second, from_int<S>(1));
      auto col = sub(coords_in(detail::normalized_at(forward(op), l)), base);
      for (int r = 0; r < k; ++r) phi(r, a) = col[r];
    }
    auto inv = inverse(phi);
    if (!inv) throw DomainError("SingularBlock", "block matrix at ell = " + std::to_string(l) + " is singular");
    auto x = (*inv) * sub(coords_in(target), base);
    for (int a = 0; a < k; ++a) res.oper.set(blk[a].first, blk[a].second, x[a]);
    res.blocks.push_back({l, phi});
  }
  return res;
}

template <class S>
bool fiber_independence_check(const OperForm<S>& a, const OperForm<S>& b) {
  auto ra = oper_to_canonical(a).reduction.form;
  auto rb = oper_to_canonical(b).reduction.form;
  return irregular_part_equal(ra, rb);
}

}  // namespace isoclinic

#pragma once

#include <numeric>

#include <Eigen/Eigenvalues>

#include "isoclinic/invariants.hpp"
#include "isoclinic/series.hpp"
#include "isoclinic/weyl.hpp"

namespace isoclinic {

// ---- eigenspaces of ad-semisimple elements with rational eigenvalues ----

inline Rational rationalize(double x, long maxden = 5040) {
  // continued fraction approximation
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > maxden) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(r - a) < 1e-12) break;
    r = 1.0 / (r - a);
  }
  Rational q(p1, q1);
  q.canonicalize();
  return q;
}

template <class S>
struct WeightSpace {
  Rational weight;
  std::vector<Vec<S>> basis;
};

template <class S>
struct WeightDecomposition {
  std::vector<WeightSpace<S>> spaces;
  Frame<S> frame;                 // concatenation of all bases
  std::vector<int> owner;         // frame index -> space index

  // components of v per weight space
  std::vector<Vec<S>> split(const Vec<S>& v) const {
    auto c = frame.coords(v);
    std::vector<Vec<S>> out(spaces.size(), zero_vec<S>(frame.dim));
    for (int k = 0; k < frame.size(); ++k) axpy(out[owner[k]], c[k], frame.vecs[k]);
    return out;
  }
};

// Eigenspaces of the linear map M (dim x dim), assumed diagonalizable with
// rational eigenvalues.
template <class S>
WeightDecomposition<S> rational_eigenspaces(const Mat<S>& M) {
  const int d = M.rows;
  Eigen::MatrixXcd E(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) E(i, j) = Field<S>::to_complex(M(i, j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(E, false);
  std::vector<Rational> cand;
  for (int i = 0; i < d; ++i) {
    Complex z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6) throw DomainError("NonRationalWeights", "eigenvalue with nonzero imaginary part");
    Rational q = rationalize(z.real());
    if (std::find(cand.begin(), cand.end(), q) == cand.end()) cand.push_back(q);
  }
  std::sort(cand.begin(), cand.end());
  WeightDecomposition<S> wd;
  std::vector<Vec<S>> all;
  for (auto& q : cand) {
    Mat<S> T = M;
    for (int i = 0; i < d; ++i) T(i, i) -= Field<S>::from_rational(q);
    auto K = kernel(T);
    if (K.empty()) continue;
    for (std::size_t k = 0; k < K.size(); ++k) wd.owner.push_back(static_cast<int>(wd.spaces.size()));
    all.insert(all.end(), K.begin(), K.end());
    wd.spaces.push_back({q, std::move(K)});
  }
  if (static_cast<int>(all.size()) != d) throw DomainError("NonRationalWeights", "map is not diagonalizable with rational eigenvalues");
  wd.frame = Frame<S>(std::move(all), d);
  return wd;
}

template <class S>
WeightDecomposition<S> ad_weights(const SimpleLieAlgebra<S>& g, const Vec<S>& mu) {
  return rational_eigenspaces(g.ad(mu));
}

// ---- connections and gauge words ----

// d + A(u) du/u with u = t^{1/A.ram}
template <class S>
struct FormalConnection {
  std::shared_ptr<const SimpleLieAlgebra<S>> g;
  LieSeries<S> A;
  int ramification() const { return A.ram; }
};

template <class S>
FormalConnection<S> make_connection(std::shared_ptr<const SimpleLieAlgebra<S>> g, int ram, const std::vector<std::pair<int, Vec<S>>>& terms,
                                    int prec = kExact) {
  FormalConnection<S> c{g, LieSeries<S>(g->dim, ram, prec)};
  for (auto& [k, v] : terms) c.A.add_to(k, v);
  return c;
}

enum class AtomKind { ExpNilpotent, CocharacterPower, Constant, Ramify, Unramify };

template <class S>
struct GaugeAtom {
  AtomKind kind = AtomKind::Constant;
  Vec<S> x;     // ExpNilpotent argument or cocharacter
  int k = 0;    // power of u
  Mat<S> M;     // Constant: automorphism matrix on g
  int b = 1;    // Ramify / Unramify factor

  static GaugeAtom exp_nilpotent(Vec<S> z, int k) { return {AtomKind::ExpNilpotent, std::move(z), k, {}, 1}; }
  static GaugeAtom cocharacter(Vec<S> mu, int k) { return {AtomKind::CocharacterPower, std::move(mu), k, {}, 1}; }
  static GaugeAtom constant(Mat<S> M) { return {AtomKind::Constant, {}, 0, std::move(M), 1}; }
  static GaugeAtom ramify(int b) { return {AtomKind::Ramify, {}, 0, {}, b}; }
  static GaugeAtom unramify(int b) { return {AtomKind::Unramify, {}, 0, {}, b}; }
};

template <class S>
using GaugeWord = std::vector<GaugeAtom<S>>;

template <class S>
GaugeAtom<S> inverse_atom(const GaugeAtom<S>& a) {
  switch (a.kind) {
    case AtomKind::ExpNilpotent: return GaugeAtom<S>::exp_nilpotent(scale(a.x, from_int<S>(-1)), a.k);
    case AtomKind::CocharacterPower: return GaugeAtom<S>::cocharacter(a.x, -a.k);
    case AtomKind::Constant: {
      auto inv = inverse(a.M);
      if (!inv) throw DomainError("NotInvertible", "constant gauge is not invertible");
      return GaugeAtom<S>::constant(*inv);
    }
    case AtomKind::Ramify: return GaugeAtom<S>::unramify(a.b);
    case AtomKind::Unramify: return GaugeAtom<S>::ramify(a.b);
  }
  return a;
}

template <class S>
GaugeWord<S> inverse_word(const GaugeWord<S>& w) {
  GaugeWord<S> r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse_atom(*it));
  return r;
}

namespace detail {

template <class S>
LieSeries<S> apply_exp(const SimpleLieAlgebra<S>& g, const LieSeries<S>& A, const Vec<S>& z, int k) {
  Mat<S> adz = g.ad(z);
  // nilpotency degree of ad z (dim + 1 when not nilpotent)
  int nil = 0;
  {
    Mat<S> P = Mat<S>::identity(g.dim);
    while (nil <= g.dim) {
      P = P * adz;
      ++nil;
      if (P.is_zero()) break;
    }
  }
  const bool nilpotent = nil <= g.dim;
  if (!nilpotent && k <= 0) throw DomainError("NotNilpotent", "exp(u^k z) with k <= 0 needs an ad-nilpotent z");
  int prec = A.prec;
  if (!nilpotent && prec >= kExact && !A.is_zero())
    throw DomainError("PrecisionUnderflow", "exponential of a non-nilpotent element needs a finite precision");
  if (k < 0) prec = prec_add(prec, k * (nil - 1));
  LieSeries<S> r(g.dim, A.ram, prec);
  LieSeries<S> cur = A;
  S fact = from_int<S>(1);
  for (int n = 0;; ++n) {
    if (cur.is_zero()) break;
    if (k >= 1 && cur.order() + k * n >= prec) break;
    for (auto& [e, v] : cur.terms) r.add_to(e + k * n, v, fact);
    if (nilpotent && n + 1 >= nil) break;
    LieSeries<S> nxt(g.dim, cur.ram, cur.prec);
    for (auto& [e, v] : cur.terms) nxt.set(e, adz * v);
    cur = std::move(nxt);
    fact = fact / from_int<S>(n + 1);
  }
  if (k != 0) r.add_to(k, z, from_int<S>(-k));
  return r;
}

template <class S>
LieSeries<S> apply_cocharacter(const SimpleLieAlgebra<S>& g, const LieSeries<S>& A, const Vec<S>& mu, int k) {
  auto wd = ad_weights(g, mu);
  std::vector<int> shift;
  int minshift = 0;
  for (auto& sp : wd.spaces) {
    Rational q = sp.weight * k;
    if (q.get_den() != 1) throw DomainError("BadRamification", "cocharacter power is not integral on the weight " + to_string(sp.weight));
    shift.push_back(static_cast<int>(q.get_num().get_si()));
  }
  for (int s : shift) minshift = std::min(minshift, s);
  LieSeries<S> r(g.dim, A.ram, prec_add(A.prec, minshift));
  for (auto& [e, v] : A.terms) {
    auto parts = wd.split(v);
    for (std::size_t i = 0; i < parts.size(); ++i) r.add_to(e + shift[i], parts[i]);
  }
  r.add_to(0, mu, from_int<S>(-k));
  return r;
}

}  // namespace detail

template <class S>
FormalConnection<S> gauge_transform(const FormalConnection<S>& c, const GaugeAtom<S>& a) {
  const auto& g = *c.g;
  FormalConnection<S> r{c.g, {}};
  switch (a.kind) {
    case AtomKind::ExpNilpotent: r.A = detail::apply_exp(g, c.A, a.x, a.k); break;
    case AtomKind::CocharacterPower: r.A = detail::apply_cocharacter(g, c.A, a.x, a.k); break;
    case AtomKind::Constant: r.A = apply(a.M, c.A); break;
    case AtomKind::Ramify: {
      r.A = ramify(c.A, a.b);
      for (auto& [e, v] : r.A.terms) v = scale(v, from_int<S>(a.b));
      break;
    }
    case AtomKind::Unramify: {
      r.A = unramify(c.A, a.b);
      for (auto& [e, v] : r.A.terms) v = scale(v, from_frac<S>(1, a.b));
      break;
    }
  }
  return r;
}

template <class S>
FormalConnection<S> gauge_transform(FormalConnection<S> c, const GaugeWord<S>& w) {
  for (auto& a : w) c = gauge_transform(c, a);
  return c;
}

// ---- canonical forms ----

template <class S>
struct RefinedData {
  std::vector<int> I;                // 1-based indices with X_i != 0
  std::vector<Rational> R;           // slopes r_i, i in I
  std::vector<Vec<S>> X;             // X_i, i in I
  std::vector<int> levi_dims;        // dim M_0 = dim g, dim M_1, ..., dim M_k
  bool generic = true;
};

template <class S>
struct CanonicalForm {
  std::shared_ptr<const SimpleLieAlgebra<S>> g;
  int ram = 1;
  std::vector<Rational> slopes;      // r_1 > ... > r_k > 0
  std::vector<Vec<S>> D;             // D_1..D_k as du/u coefficients of u^{-r_i ram}
  Vec<S> regular;                    // D_{k+1}
  // class representatives (see normalize_canonical)
  std::vector<Vec<S>> Dn;
  Vec<S> regular_n;
  bool regular_normalized = false;
  std::string regular_status = "nonresonant";  // or "resonant"
  int precision = kExact;                      // u-precision of the reduced series
  std::string weakly_z_reduced = "unverified"; // "verified", "failed", "unverified"
  std::optional<RefinedData<S>> refined;

  int k() const { return static_cast<int>(D.size()); }
  int exponent(int i) const {
    Rational e = -slopes[i] * ram;
    return static_cast<int>(e.get_num().get_si());
  }
  FormalConnection<S> connection() const {
    FormalConnection<S> c{g, LieSeries<S>(g->dim, ram, 1)};
    for (int i = 0; i < k(); ++i) c.A.add_to(exponent(i), D[i]);
    c.A.add_to(0, regular);
    return c;
  }
};

namespace detail {

template <class S>
std::vector<Vec<S>> derived_span(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& m) {
  std::vector<Vec<S>> br;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) br.push_back(g.bracket(m[i], m[j]));
  return span_basis(br, g.dim);
}

template <class S>
std::vector<Vec<S>> center_of(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& m) {
  return centralizer_in(g, m, m);
}

template <class S>
Vec<S> combine(const std::vector<Vec<S>>& basis, const Vec<S>& c, int dim) {
  auto w = zero_vec<S>(dim);
  for (std::size_t k = 0; k < basis.size(); ++k) axpy(w, c[k], basis[k]);
  return w;
}

// Solve sum_k x_k L(b_k) = w over a basis b of a subspace; returns the combination.
template <class S, class F>
std::optional<Vec<S>> solve_in(const std::vector<Vec<S>>& basis, const Vec<S>& w, int dim, F&& L) {
  if (basis.empty()) {
    if (is_zero(w)) return zero_vec<S>(dim);
    return std::nullopt;
  }
  std::vector<Vec<S>> cols;
  for (auto& b : basis) cols.push_back(L(b));
  auto x = solve(Mat<S>::from_columns(cols, dim), w);
  if (!x) return std::nullopt;
  return combine(basis, *x, dim);
}

// sl2 triple (e, h, f=Y) inside the subalgebra spanned by s
template <class S>
std::pair<Vec<S>, Vec<S>> sl2_triple(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& s, const Vec<S>& Y) {
  const int d = g.dim;
  auto z = solve_in(s, scale(Y, from_int<S>(2)), d, [&](const Vec<S>& b) { return g.bracket(Y, g.bracket(Y, b)); });
  if (!z) throw std::logic_error("no neutral element for a nilpotent leading term");
  Vec<S> h = g.bracket(Y, *z);
  // [h,e] - 2e = 0 and [e,Y] = h, stacked
  std::vector<Vec<S>> cols;
  for (auto& b : s) {
    auto top = sub(g.bracket(h, b), scale(b, from_int<S>(2)));
    auto bot = g.bracket(b, Y);
    top.insert(top.end(), bot.begin(), bot.end());
    cols.push_back(top);
  }
  Vec<S> rhs = zero_vec<S>(d);
  rhs.insert(rhs.end(), h.begin(), h.end());
  auto x = solve(Mat<S>::from_columns(cols, 2 * d), rhs);
  if (!x) throw std::logic_error("no sl2 triple through a nilpotent leading term");
  return {combine(s, *x, d), h};
}

}  // namespace detail

struct ReduceOptions {
  int precision = 0;        // absolute u-precision for exact inputs; 0 = automatic
  int max_iterations = 0;   // 0 = automatic
};

template <class S>
struct Reduction {
  CanonicalForm<S> form;
  GaugeWord<S> word;
};

namespace detail {

template <class S>
struct Reducer {
  const SimpleLieAlgebra<S>& g;
  FormalConnection<S> conn;
  GaugeWord<S> word;
  std::vector<Vec<S>> frozen;  // abelian, central in the active Levi
  std::vector<Vec<S>> active;  // semisimple part of the current Levi
  std::string status = "nonresonant";
  int levi_steps = 0;
  int iterations = 0;
  int max_iterations;

  Frame<S> levi_frame;

  Reducer(const SimpleLieAlgebra<S>& g_, FormalConnection<S> c, int maxit) : g(g_), conn(std::move(c)), max_iterations(maxit) {
    for (int k = 0; k < g.dim; ++k) active.push_back(g.basis(k));
    refresh();
  }

  void refresh() {
    std::vector<Vec<S>> all = frozen;
    all.insert(all.end(), active.begin(), active.end());
    levi_frame = Frame<S>(all, g.dim);
  }

  void apply(const GaugeAtom<S>& a) {
    conn = gauge_transform(conn, a);
    word.push_back(a);
  }

  // split v in frozen (+) active
  std::pair<Vec<S>, Vec<S>> split(const Vec<S>& v) const {
    const auto& all = levi_frame.vecs;
    auto c = levi_frame.coords(v);
    Vec<S> fz = zero_vec<S>(g.dim), ac = zero_vec<S>(g.dim);
    for (std::size_t k = 0; k < all.size(); ++k) axpy(k < frozen.size() ? fz : ac, c[k], all[k]);
    return {fz, ac};
  }

  Vec<S> active_coeff(int q) const { return split(conn.A.coeff(q)).second; }

  int active_order() const {
    for (auto& [e, v] : conn.A.terms)
      if (!is_zero(split(v).second)) return e;
    return kExact;
  }

  void run() {
    for (;;) {
      if (++iterations > max_iterations) throw DomainError("StageLimitExceeded", "reduction did not terminate within the iteration cap");
      if (active.empty()) break;
      int r0 = active_order();
      if (r0 >= conn.A.prec) throw DomainError("PrecisionUnderflow", "active part vanishes to the tracked precision");
      if (r0 >= 0) {
        regular_singular();
        break;
      }
      Vec<S> L = conn.A.coeff(r0);
      L = split(L).second;
      auto [Ss, Y] = jordan_decompose(g, L);
      if (!is_zero(Ss))
        split_stage(r0, L, Ss);
      else
        shear_stage(r0, Y);
    }
    cleanup_frozen();
  }

  void split_stage(int r0, const Vec<S>& L, const Vec<S>& Ss) {
    const int d = g.dim;
    auto ker = centralizer_in(g, active, {Ss});
    std::vector<Vec<S>> im;
    for (auto& b : active) im.push_back(g.bracket(Ss, b));
    im = span_basis(im, d);
    std::vector<Vec<S>> kf = ker;
    kf.insert(kf.end(), im.begin(), im.end());
    Frame<S> F(kf, d);
    auto der = derived_span(g, ker);
    if (der.empty()) conn.A.truncate(1);
    for (int q = r0 + 1; q < conn.A.prec; ++q) {
      auto v = active_coeff(q);
      auto c = F.coords(v);
      Vec<S> w = zero_vec<S>(d);
      for (std::size_t k = ker.size(); k < kf.size(); ++k) axpy(w, c[k], kf[k]);
      if (is_zero(w)) continue;
      auto Z = solve_in(im, w, d, [&](const Vec<S>& b) { return g.bracket(L, b); });
      if (!Z) throw std::logic_error("leading term is not invertible on the image of its semisimple part");
      apply(GaugeAtom<S>::exp_nilpotent(*Z, q - r0));
    }
    auto z = center_of(g, ker);
    frozen.insert(frozen.end(), z.begin(), z.end());
    frozen = span_basis(frozen, d);
    active = der;
    refresh();
    if (++levi_steps > g.n + 1) throw DomainError("StageLimitExceeded", "Levi recursion exceeded rank + 1 stages");
  }

  void shear_stage(int r0, const Vec<S>& Y) {
    const int d = g.dim;
    auto [e, h] = sl2_triple(g, active, Y);
    std::vector<Vec<S>> im;
    for (auto& b : active) im.push_back(g.bracket(Y, b));
    im = span_basis(im, d);
    auto slice = centralizer_in(g, active, {e});
    std::vector<Vec<S>> kf = im;
    kf.insert(kf.end(), slice.begin(), slice.end());
    Frame<S> F(kf, d);
    for (int q = r0 + 1; q < conn.A.prec; ++q) {
      auto c = F.coords(active_coeff(q));
      Vec<S> w = zero_vec<S>(d);
      for (std::size_t k = 0; k < im.size(); ++k) axpy(w, c[k], kf[k]);
      if (is_zero(w)) continue;
      auto Z = solve_in(active, w, d, [&](const Vec<S>& b) { return g.bracket(Y, b); });
      if (!Z) throw std::logic_error("slice decomposition failed");
      apply(GaugeAtom<S>::exp_nilpotent(*Z, q - r0));
    }
    auto wd = ad_weights(g, h);
    Rational lmax = 0;
    for (auto& sp : wd.spaces) lmax = std::max(lmax, sp.weight);
    const Rational r = -r0;
    Rational delta = r;
    for (int q = r0 + 1; q < conn.A.prec; ++q) {
      auto parts = wd.split(active_coeff(q));
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (is_zero(parts[i])) continue;
        Rational cand = Rational(2 * (q - r0)) / (wd.spaces[i].weight + 2);
        cand.canonicalize();
        if (cand < delta) delta = cand;
      }
    }
    if (conn.A.prec < kExact) {
      Rational bound = Rational(2 * (conn.A.prec - r0)) / (lmax + 2);
      if (bound <= delta) throw DomainError("PrecisionUnderflow", "shearing exponent is not determined by the tracked precision");
    }
    // u^{-delta/2 h}: ramify so that every weight shift is integral
    Rational c = -delta / 2;
    long b = 1;
    for (auto& sp : wd.spaces) {
      Rational x = c * sp.weight;
      x.canonicalize();
      long den = x.get_den().get_si();
      b = std::lcm(b, den);
    }
    if (b > 1) apply(GaugeAtom<S>::ramify(static_cast<int>(b)));
    Rational cb = c * static_cast<long>(b);
    cb.canonicalize();
    apply(GaugeAtom<S>::cocharacter(scale(h, Field<S>::from_rational(cb)), 1));
  }

  void regular_singular() {
    const int d = g.dim;
    if (conn.A.prec <= 0) throw DomainError("PrecisionUnderflow", "residue is beyond the tracked precision");
    Vec<S> R0 = active_coeff(0);
    for (int q = 1; q < conn.A.prec; ++q) {
      auto w = active_coeff(q);
      if (is_zero(w)) continue;
      auto Z = solve_in(active, w, d, [&](const Vec<S>& b) { return add(g.bracket(R0, b), scale(b, from_int<S>(q))); });
      if (!Z) {
        status = "resonant";
        return;
      }
      apply(GaugeAtom<S>::exp_nilpotent(*Z, q));
    }
  }

  // frozen parts are central in everything still present: remove positive orders
  void cleanup_frozen() {
    for (int q = 1; q < conn.A.prec; ++q) {
      auto fz = split(conn.A.coeff(q)).first;
      if (is_zero(fz)) continue;
      apply(GaugeAtom<S>::exp_nilpotent(scale(fz, from_frac<S>(1, q)), q));
    }
  }
};

template <class S>
std::optional<std::vector<S>> polynomial_coefficients(const Mat<S>& X, const Mat<S>& Y) {
  // Y = sum_j c_j X^j, j < size
  const int V = X.rows;
  std::vector<Vec<S>> cols;
  Mat<S> P = Mat<S>::identity(V);
  for (int j = 0; j < V; ++j) {
    cols.push_back(P.a);
    P = P * X;
  }
  return solve(Mat<S>::from_columns(cols, V * V), Y.a);
}

template <class S>
Mat<S> polynomial_apply(const std::vector<S>& c, const Mat<S>& X) {
  const int V = X.rows;
  Mat<S> R(V, V), P = Mat<S>::identity(V);
  for (auto& cj : c) {
    R = R + scale(P, cj);
    P = P * X;
  }
  return R;
}

}  // namespace detail

// Replace the commuting semisimple data by class representatives: D_gen is a
// generic combination, every D_i = P_i(D_gen) in the defining representation,
// and D_gen is traded for the semisimple part of the Kostant-section element
// with the same invariants.
template <class S>
void normalize_canonical(CanonicalForm<S>& cf) {
  const auto& g = *cf.g;
  cf.Dn = cf.D;
  cf.regular_n = cf.regular;
  cf.regular_normalized = false;
  if (cf.D.empty()) return;
  auto common = centralizer(g, cf.D);
  Vec<S> gen;
  bool found = false;
  for (int trial = 0; trial < 32 && !found; ++trial) {
    gen = g.zero();
    for (std::size_t i = 0; i < cf.D.size(); ++i) {
      // D_1 alone first, so that the normalization is linear in the lower terms
      long c = i == 0 ? 1 : (trial == 0 ? 0 : static_cast<long>((trial + 1) * (i + 1) * (i + 1) + i));
      axpy(gen, from_int<S>(c), cf.D[i]);
    }
    found = centralizer(g, {gen}).size() == common.size();
  }
  if (!found) throw std::logic_error("no generic combination of the polar coefficients");
  Mat<S> X = g.represent(gen);
  auto Ks = jordan_decompose(g, kostant_element(g, invariant_coordinates(g, gen))).first;
  Mat<S> K = g.represent(Ks);
  for (std::size_t i = 0; i < cf.D.size(); ++i) {
    auto c = detail::polynomial_coefficients(X, g.represent(cf.D[i]));
    if (!c) throw std::logic_error("polar coefficient is not a polynomial in the generic one");
    auto v = g.from_rep(detail::polynomial_apply(*c, K));
    if (!v) throw std::logic_error("normalized coefficient left the algebra");
    cf.Dn[i] = *v;
  }
  if (!is_zero(cf.regular)) {
    auto c = detail::polynomial_coefficients(X, g.represent(cf.regular));
    if (c) {
      if (auto v = g.from_rep(detail::polynomial_apply(*c, K))) {
        cf.regular_n = *v;
        cf.regular_normalized = true;
      }
    }
  } else {
    cf.regular_normalized = true;
  }
}

template <class S>
std::string weakly_z_reduced_status(const SimpleLieAlgebra<S>& g, const Vec<S>& regular) {
  if (is_zero(regular)) return "verified";
  auto s = jordan_decompose(g, regular).first;
  try {
    auto wd = ad_weights(g, s);
    for (auto& sp : wd.spaces)
      if (sp.weight != 0 && sp.weight.get_den() == 1) return "failed";
    return "verified";
  } catch (const DomainError&) {
    return "unverified";
  }
}

template <class S>
RefinedData<S> refined_leading_terms(const CanonicalForm<S>& cf) {
  const auto& g = *cf.g;
  const int d = g.dim;
  RefinedData<S> rd;
  std::vector<Vec<S>> m_prev, z_prev, der_prev;
  for (int k = 0; k < d; ++k) m_prev.push_back(g.basis(k));
  der_prev = m_prev;
  rd.levi_dims.push_back(d);
  std::vector<Vec<S>> Ds;
  for (int i = 0; i < cf.k(); ++i) {
    Ds.push_back(cf.D[i]);
    auto m = centralizer(g, Ds);
    auto z = detail::center_of(g, m);
    auto a = intersect(z, der_prev, d);
    a = span_basis(a, d);
    // project D_i onto a along z_{i-1}
    Vec<S> Xi = g.zero();
    if (!a.empty()) {
      std::vector<Vec<S>> all = z_prev;
      all.insert(all.end(), a.begin(), a.end());
      auto c = coordinates(all, cf.D[i]);
      if (!c) throw std::logic_error("polar coefficient is not central in its Levi");
      for (std::size_t k = z_prev.size(); k < all.size(); ++k) axpy(Xi, (*c)[k], all[k]);
    }
    if (!is_zero(Xi)) {
      rd.I.push_back(i + 1);
      rd.R.push_back(cf.slopes[i]);
      rd.X.push_back(Xi);
      if (centralizer_in(g, m_prev, {Xi}).size() != m.size()) rd.generic = false;
    }
    rd.levi_dims.push_back(static_cast<int>(m.size()));
    m_prev = m;
    z_prev = z;
    der_prev = detail::derived_span(g, m);
  }
  return rd;
}

template <class S>
bool is_isoclinic(const CanonicalForm<S>& cf) {
  return cf.k() >= 1 && is_regular_semisimple(*cf.g, cf.D[0]);
}

// Equality of all (r_i, D_i) in t-normalization, compared through class representatives.
template <class S>
bool irregular_part_equal(const CanonicalForm<S>& a, const CanonicalForm<S>& b) {
  if (a.k() != b.k()) return false;
  for (int i = 0; i < a.k(); ++i) {
    if (a.slopes[i] != b.slopes[i]) return false;
    const auto& x = a.Dn.empty() ? a.D : a.Dn;
    const auto& y = b.Dn.empty() ? b.D : b.Dn;
    if (!vec_equal(scale(x[i], from_frac<S>(1, a.ram)), scale(y[i], from_frac<S>(1, b.ram)))) return false;
  }
  return true;
}

template <class S>
CanonicalForm<S> finish_canonical(const FormalConnection<S>& c, const std::string& status) {
  CanonicalForm<S> cf;
  cf.g = c.g;
  cf.ram = c.A.ram;
  cf.regular_status = status;
  cf.regular = c.A.prec > 0 ? c.A.coeff(0) : c.g->zero();
  for (auto& [e, v] : c.A.terms) {
    if (e >= 0) break;
    Rational r(-e, cf.ram);
    r.canonicalize();
    cf.slopes.push_back(r);
    cf.D.push_back(v);
  }
  normalize_canonical(cf);
  cf.weakly_z_reduced = weakly_z_reduced_status(*cf.g, cf.regular);
  cf.refined = refined_leading_terms(cf);
  return cf;
}

template <class S>
Reduction<S> reduce_to_canonical_at(const FormalConnection<S>& conn, int precision, int max_iterations) {
  const auto& g = *conn.g;
  FormalConnection<S> c = conn;
  c.A.normalize();
  c.A.truncate(precision);
  detail::Reducer<S> red(g, c, max_iterations);
  red.run();
  auto& A = red.conn.A;
  const int reached = A.prec;
  // positive orders are gauged away (unless resonant); drop them
  if (red.status != "resonant") A.truncate(1);
  int gg = A.ram;
  for (auto& [e, v] : A.terms) gg = std::gcd(gg, std::abs(e));
  if (gg > 1) red.apply(GaugeAtom<S>::unramify(gg));
  for (auto& [e, v] : red.conn.A.terms)
    if (e < 0 && !is_semisimple(g, v)) throw std::logic_error("polar coefficient of the reduced form is not semisimple");
  auto cf = finish_canonical(red.conn, red.status);
  cf.precision = reached >= kExact ? kExact : (reached + gg - 1) / gg;
  return {cf, red.word};
}

// Reduce to canonical form; exact inputs are truncated at an automatic
// precision that is doubled until the reduction is determined.
template <class S>
Reduction<S> reduce_to_canonical(const FormalConnection<S>& conn, const ReduceOptions& opt = {}) {
  const auto& g = *conn.g;
  int maxit = opt.max_iterations > 0 ? opt.max_iterations : 8 * (g.n + 2) * g.coxeter;
  if (conn.A.is_zero()) {
    CanonicalForm<S> cf;
    cf.g = conn.g;
    cf.ram = conn.A.ram;
    cf.regular = g.zero();
    cf.Dn = {};
    cf.regular_n = g.zero();
    cf.regular_normalized = true;
    cf.weakly_z_reduced = "verified";
    cf.refined = refined_leading_terms(cf);
    return {cf, {}};
  }
  int ord = conn.A.order();
  if (conn.A.prec < kExact) return reduce_to_canonical_at(conn, conn.A.prec, maxit);
  int span = std::max(1, -ord);
  int P = opt.precision > 0 ? opt.precision : std::max(2, ord + span * g.coxeter + 2);
  for (int attempt = 0;; ++attempt) {
    try {
      return reduce_to_canonical_at(conn, P, maxit);
    } catch (const DomainError& e) {
      if (e.code() != "PrecisionUnderflow" || opt.precision > 0 || attempt >= 6) throw;
      P = ord + 2 * (P - ord);
    }
  }
}

// ---- descent ----

enum class ThetaKind { Reflection, Torus };

// Reflection(i): Ad of n_i = exp(e_i) exp(-f_i) exp(e_i).
// Torus(mu, L, k): E_beta -> zeta_L^{k beta(mu)} E_beta for an integral coweight mu (coroot coordinates).
struct ThetaAtom {
  ThetaKind kind = ThetaKind::Reflection;
  int i = 0;
  std::vector<long> mu;
  int L = 1;
  long k = 0;
};

template <class S>
Mat<S> theta_matrix(const SimpleLieAlgebra<S>& g, const std::vector<ThetaAtom>& word) {
  Mat<S> M = Mat<S>::identity(g.dim);
  for (auto& a : word) {
    Mat<S> A;
    if (a.kind == ThetaKind::Reflection) {
      if (a.i < 0 || a.i >= g.n) throw DomainError("BadReflection", "reflection index out of range");
      Root ai(g.n, 0), mi(g.n, 0);
      ai[a.i] = 1;
      mi[a.i] = -1;
      auto e = g.basis(g.root_index(ai)), f = g.basis(g.root_index(mi));
      A = exp_ad_nilpotent(g, e) * exp_ad_nilpotent(g, scale(f, from_int<S>(-1))) * exp_ad_nilpotent(g, e);
    } else {
      if (static_cast<int>(a.mu.size()) != g.n) throw DomainError("BadCoweight", "torus coweight has the wrong length");
      A = Mat<S>::identity(g.dim);
      for (int b = g.n; b < g.dim; ++b) {
        long v = 0;
        for (int i = 0; i < g.n; ++i)
          for (int j = 0; j < g.n; ++j) v += a.mu[i] * g.basis_root[b][j] * g.cartan[i][j];
        A(b, b) = Field<S>::zeta(a.L, a.k * v);
      }
    }
    M = A * M;
  }
  return M;
}

template <class S>
bool descent_check(const CanonicalForm<S>& cf, const std::vector<ThetaAtom>& theta, int b) {
  const auto& g = *cf.g;
  if (b < 1) return false;
  Mat<S> T = theta_matrix(g, theta);
  Mat<S> P = Mat<S>::identity(g.dim);
  for (int i = 0; i < b; ++i) P = P * T;
  for (int i = 0; i < g.n; ++i)
    if (!vec_equal(P * g.basis(i), g.basis(i))) return false;
  for (int i = 0; i < cf.k(); ++i) {
    Rational br = cf.slopes[i] * b;
    br.canonicalize();
    if (br.get_den() != 1) return false;
    long e = br.get_num().get_si();
    S z = Field<S>::zeta(b, -e);
    if (!vec_equal(T * cf.D[i], scale(cf.D[i], z))) return false;
  }
  return true;
}

}  // namespace isoclinic

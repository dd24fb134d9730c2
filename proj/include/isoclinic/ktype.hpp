#pragma once

#include <complex>

#include <Eigen/Eigenvalues>

#include "isoclinic/oper.hpp"

namespace isoclinic {

namespace detail {

inline long isqrt_exact(long v) {
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

// sqrt(p*) with p* = (-1)^{(p-1)/2} p, as a quadratic Gauss sum
inline Cyc gauss_sum(long p) {
  Cyc s(0);
  for (long a = 1; a < p; ++a) {
    long ls = 1;
    long x = 1;
    for (long e = 0; e < (p - 1) / 2; ++e) x = x * a % p;
    if (x != 1) ls = -1;
    s += Cyc(ls) * Cyc::zeta(static_cast<int>(p), a);
  }
  return s;
}

// A square root of the squarefree integer k in a cyclotomic field.
inline Cyc sqrt_squarefree(long k) {
  Cyc r(1);
  if (k < 0) {
    r = Cyc::zeta(4);
    k = -k;
  }
  for (long p = 2; p <= k; ++p) {
    if (k % p) continue;
    k /= p;
    if (p == 2) {
      r *= Cyc::zeta(8) + Cyc::zeta(8, 7);
    } else {
      Cyc g = gauss_sum(p);
      if (p % 4 == 3) g *= -Cyc::zeta(4);  // sqrt(-p) -> sqrt(p)
      r *= g;
    }
  }
  return r;
}

// sqrt(q) in a cyclotomic field, sign chosen with positive real part
// (positive imaginary part when purely imaginary).
inline Cyc cyclotomic_sqrt(const Rational& q) {
  if (q == 0) return Cyc(0);
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class k = num * den;  // sqrt(num/den) = sqrt(num*den)/den
  const bool neg = k < 0;
  if (neg) k = -k;
  if (!k.fits_slong_p()) throw DomainError("NonSplitSpectrum", "eigenvalue square too large");
  long kk = k.get_si(), sq = 1, free = 1;
  for (long p = 2; p * p <= kk; ++p)
    while (kk % p == 0) {
      kk /= p;
      if (free % p == 0) {
        free /= p;
        sq *= p;
      } else {
        free *= p;
      }
    }
  if (kk > 1) {
    if (free % kk == 0) {
      free /= kk;
      sq *= kk;
    } else {
      free *= kk;
    }
  }
  Rational coef(sq);
  coef /= Rational(den);
  Cyc r = Cyc(coef) * sqrt_squarefree(neg ? -free : free);
  auto z = r.to_complex();
  if (z.real() < -1e-9 || (std::abs(z.real()) <= 1e-9 && z.imag() < 0)) r = -r;
  return r;
}

template <class S>
Eigen::MatrixXcd to_eigen(const Mat<S>& M) {
  Eigen::MatrixXcd E(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) E(i, j) = Field<S>::to_complex(M(i, j));
  return E;
}

inline bool positive_side(const Complex& z) { return z.real() > 1e-7 || (std::abs(z.real()) <= 1e-7 && z.imag() > 0); }

// Distinct eigenvalue pairs {c, -c} of M, returned as the representative c on the positive side,
// ordered by c^2 (real part, then imaginary part).
template <class S>
std::vector<S> paired_spectrum(const Mat<S>& M) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(M), false);
  std::vector<Complex> reps;
  for (int i = 0; i < M.rows; ++i) {
    Complex c = es.eigenvalues()[i];
    if (std::abs(c) < 1e-7) throw DomainError("NonSplitSpectrum", "zero eigenvalue on the middle piece");
    if (!positive_side(c)) c = -c;
    bool dup = false;
    for (auto& r : reps)
      if (std::abs(r - c) < 1e-6) dup = true;
    if (!dup) reps.push_back(c);
  }
  std::sort(reps.begin(), reps.end(), [](const Complex& a, const Complex& b) {
    Complex a2 = a * a, b2 = b * b;
    if (std::abs(a2.real() - b2.real()) > 1e-7) return a2.real() < b2.real();
    return a2.imag() < b2.imag();
  });
  std::vector<S> out;
  for (auto& c : reps) {
    if constexpr (Field<S>::exact) {
      Complex c2 = c * c;
      if (std::abs(c2.imag()) > 1e-6) throw DomainError("NonSplitSpectrum", "eigenvalue square is not rational");
      Rational q = rationalize(c2.real());
      if (std::abs(q.get_d() - c2.real()) > 1e-6) throw DomainError("NonSplitSpectrum", "eigenvalue square is not rational");
      out.push_back(cyclotomic_sqrt(q));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

// ---- toral datum ----

template <class S>
struct ToralDatum {
  std::shared_ptr<const SimpleLieAlgebra<S>> g;
  int m = 1, N = 1;
  Vec<S> lambda;  // rho-check; Theta = Ad lambda(zeta_m)
  Vec<S> Y;       // regular semisimple in g_{-N}
  std::vector<std::vector<Vec<S>>> tY;   // t_{Y,i}, i mod m
  std::vector<std::vector<Vec<S>>> tau;  // tau_i = [Y, g_{i+N}], i mod m
  std::map<std::string, bool> checks;

  int piece(long i) const { return mod(i, m); }
  std::vector<Vec<S>> g_piece(long i) const { return graded_piece(*g, m, i); }
  const std::vector<Vec<S>>& t(long i) const { return tY[piece(i)]; }
  const std::vector<Vec<S>>& tau_at(long i) const { return tau[piece(i)]; }
  Rational slope() const {
    Rational r(N, m);
    r.canonicalize();
    return r;
  }
};

// component of x in the graded piece i
template <class S>
Vec<S> graded_component(const SimpleLieAlgebra<S>& g, int m, long i, const Vec<S>& x) {
  auto y = g.zero();
  for (int k = 0; k < g.dim; ++k)
    if (mod(g.height[k] - i, m) == 0) y[k] = x[k];
  return y;
}

template <class S>
bool in_graded_piece(const SimpleLieAlgebra<S>& g, int m, long i, const Vec<S>& x) {
  return vec_equal(graded_component(g, m, i, x), x);
}

// p_{-1} + E_theta for the piece of heights -1 mod m, sum E_{alpha_i} + E_{-theta} for +1
template <class S>
std::optional<Vec<S>> cyclic_element(const SimpleLieAlgebra<S>& g, int m, long i) {
  const int r = mod(i, m);
  const int top = static_cast<int>(g.pos_roots.size()) - 1;  // highest root is last
  Root theta = g.pos_roots[top];
  if (r == mod(-1, m) && mod(g.coxeter - 1, m) == r) {
    auto x = g.p_minus;
    x[g.root_index(theta)] += from_int<S>(1);
    return x;
  }
  if (r == mod(1, m) && mod(1 - g.coxeter, m) == r) {
    auto x = g.zero();
    for (int k = 0; k < g.n; ++k) x[g.root_index(g.pos_roots[k])] += from_int<S>(1);
    Root nt = theta;
    for (auto& c : nt) c = -c;
    x[g.root_index(nt)] += from_int<S>(1);
    return x;
  }
  return std::nullopt;
}

template <class S>
ToralDatum<S> build_toral_datum(std::shared_ptr<const SimpleLieAlgebra<S>> gp, int m, int N, std::optional<Vec<S>> Y = std::nullopt) {
  const auto& g = *gp;
  if (N < 1 || m < 1 || std::gcd(N, m) != 1) throw DomainError("NotCoprime", "N and m must be coprime positive integers");
  if (!regular_elliptic_numbers(g).count(m)) throw DomainError("NotRegularElliptic", "m is not a regular elliptic number");
  ToralDatum<S> d;
  d.g = gp;
  d.m = m;
  d.N = N;
  d.lambda = g.rho_check;
  if (Y) {
    if (!in_graded_piece(g, m, -N, *Y)) throw DomainError("NoRegularElement", "Y is not in the graded piece -N");
    if (!is_regular_semisimple(g, *Y)) throw DomainError("NoRegularElement", "Y is not regular semisimple");
    d.Y = *Y;
  } else {
    auto c = cyclic_element(g, m, -N);
    if (c && is_regular_semisimple(g, *c))
      d.Y = *c;
    else if (auto x = find_regular_semisimple(g, m, -N))
      d.Y = *x;
    else
      throw DomainError("NoRegularElement", "no regular semisimple element in the graded piece -N");
  }
  auto tYall = centralizer(g, {d.Y});
  const int nroots = g.num_roots();
  bool tau_dim = true, split = true;
  for (int i = 0; i < m; ++i) {
    auto gi = d.g_piece(i);
    d.tY.push_back(span_basis(intersect(tYall, gi, g.dim), g.dim));
    std::vector<Vec<S>> img;
    for (auto& x : d.g_piece(i + N)) img.push_back(g.bracket(d.Y, x));
    d.tau.push_back(span_basis(img, g.dim));
    if (static_cast<int>(d.tau[i].size()) * m != nroots) tau_dim = false;
    auto both = d.tY[i];
    both.insert(both.end(), d.tau[i].begin(), d.tau[i].end());
    if (static_cast<int>(span_basis(both, g.dim).size()) != static_cast<int>(gi.size()) ||
        d.tY[i].size() + d.tau[i].size() != gi.size())
      split = false;
  }
  d.checks["tau_dim"] = tau_dim;
  d.checks["t_Y0_zero"] = d.tY[0].empty();
  d.checks["direct_sum"] = split;
  return d;
}

// ---- lattices ----

// Graded lattice: explicit pieces for finitely many degrees, then all of g_i for i >= tail.
template <class S>
struct GradedLattice {
  std::map<int, std::vector<Vec<S>>> pieces;
  int tail = 0;

  std::vector<Vec<S>> at(const ToralDatum<S>& d, int i) const {
    if (i >= tail) return d.g_piece(i);
    auto it = pieces.find(i);
    return it == pieces.end() ? std::vector<Vec<S>>{} : it->second;
  }
  int lowest() const { return pieces.empty() ? tail : std::min(tail, pieces.begin()->first); }
};

template <class S>
struct KTypeLattices {
  GradedLattice<S> jprime, jplus, j, jplus_perp, jperp;
  std::vector<Vec<S>> lagrangian;            // m in tau_{N/2} (N even)
  std::vector<S> lagrangian_eigenvalues;     // eigenvalues of ad(Y)^m assigned to the A side
  std::map<std::string, bool> checks;
  int bj_dim = 0;
};

template <class S>
std::vector<Vec<S>> killing_orthogonal(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& space, const std::vector<Vec<S>>& against) {
  if (against.empty()) return space;
  Mat<S> M(static_cast<int>(against.size()), static_cast<int>(space.size()));
  for (std::size_t a = 0; a < against.size(); ++a)
    for (std::size_t b = 0; b < space.size(); ++b) M(static_cast<int>(a), static_cast<int>(b)) = g.kappa(against[a], space[b]);
  std::vector<Vec<S>> out;
  for (auto& k : kernel(M)) out.push_back(detail::combine(space, k, g.dim));
  return span_basis(out, g.dim);
}

namespace detail {

template <class S>
bool subspace_of(const std::vector<Vec<S>>& small, const std::vector<Vec<S>>& big) {
  for (auto& x : small)
    if (!in_span(big, x)) return false;
  return true;
}

// Lagrangian of tau_{N/2}: sum of eigenspaces of ad(Y)^m for the A side of each pair {c, -c}.
template <class S>
std::vector<Vec<S>> build_lagrangian(const ToralDatum<S>& d, std::vector<S>& eigs) {
  const auto& g = *d.g;
  const auto& tau = d.tau_at(d.N / 2);
  const int k = static_cast<int>(tau.size());
  Frame<S> fr(tau, g.dim);
  Mat<S> adY = g.ad(d.Y), P = Mat<S>::identity(g.dim);
  for (int e = 0; e < d.m; ++e) P = P * adY;
  Mat<S> T(k, k);
  for (int b = 0; b < k; ++b) {
    auto c = fr.coords(P * tau[b]);
    for (int a = 0; a < k; ++a) T(a, b) = c[a];
  }
  eigs = paired_spectrum(T);
  std::vector<Vec<S>> out;
  int total = 0;
  for (auto& c : eigs) {
    for (int sgn : {1, -1}) {
      Mat<S> Mc = T;
      S cc = sgn > 0 ? c : -c;
      for (int a = 0; a < k; ++a) Mc(a, a) -= cc;
      auto ker = kernel(Mc);
      total += static_cast<int>(ker.size());
      if (sgn > 0)
        for (auto& v : ker) out.push_back(fr.combine(v));
    }
  }
  if (total != k) throw DomainError("NonSplitSpectrum", "ad(Y)^m is not diagonalizable over the field on the middle piece");
  return span_basis(out, g.dim);
}

}  // namespace detail

template <class S>
KTypeLattices<S> build_lattices(const ToralDatum<S>& d) {
  const auto& g = *d.g;
  const int N = d.N;
  KTypeLattices<S> L;
  const bool even = N % 2 == 0;
  // j' = j+
  const int lo = even ? N / 2 + 1 : (N + 1) / 2;
  for (int i = lo; i <= N; ++i) L.jprime.pieces[i] = d.tau_at(i);
  if (even) {
    L.lagrangian = detail::build_lagrangian(d, L.lagrangian_eigenvalues);
    L.jprime.pieces[N / 2] = L.lagrangian;
  }
  L.jprime.tail = N + 1;
  L.jplus = L.jprime;
  // j = j' + sum_{i >= 1} t_{Y,i} u^i
  L.j.tail = N + 1;
  for (int i = 1; i <= N; ++i) {
    auto v = d.t(i);
    auto jp = L.jprime.at(d, i);
    v.insert(v.end(), jp.begin(), jp.end());
    L.j.pieces[i] = span_basis(v, g.dim);
    L.bj_dim += static_cast<int>(d.t(i).size());
  }
  // j^{+,perp} for the residue pairing against du/u
  if (!even) {
    for (int i = -N; i <= -(N + 1) / 2; ++i) L.jplus_perp.pieces[i] = d.t(i);
    L.jplus_perp.tail = -(N - 1) / 2;
  } else {
    for (int i = -N; i <= -N / 2 - 1; ++i) L.jplus_perp.pieces[i] = d.t(i);
    L.jplus_perp.pieces[-N / 2] = killing_orthogonal(g, d.g_piece(-N / 2), L.lagrangian);
    L.jplus_perp.tail = -N / 2 + 1;
  }
  // j^perp
  if (!even) {
    for (int i = -(N - 1) / 2; i <= -1; ++i) L.jperp.pieces[i] = d.tau_at(i);
  } else {
    L.jperp.pieces[-N / 2] = span_basis(intersect(d.tau_at(-N / 2), killing_orthogonal(g, d.g_piece(-N / 2), L.lagrangian), g.dim), g.dim);
    for (int i = -N / 2 + 1; i <= -1; ++i) L.jperp.pieces[i] = d.tau_at(i);
  }
  L.jperp.tail = 0;

  // ---- checks ----
  if (even) {
    const auto& mid = d.tau_at(N / 2);
    L.checks["lagrangian_dim"] = 2 * L.lagrangian.size() == mid.size();
    bool iso = true, closed = true;
    for (auto& x : L.lagrangian)
      for (auto& y : L.lagrangian) {
        auto b = g.bracket(x, y);
        if (!Field<S>::is_zero(g.kappa(d.Y, b))) iso = false;
        if (!in_span(d.tau_at(N), b)) closed = false;
      }
    L.checks["lagrangian_isotropic"] = iso;
    L.checks["lagrangian_bracket_in_tau_N"] = closed;
    const int k = static_cast<int>(mid.size());
    Mat<S> om(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) om(a, b) = g.kappa(d.Y, g.bracket(mid[a], mid[b]));
    L.checks["symplectic_nondegenerate"] = rank(om) == k;
  }
  // [j, j'] in j', by graded bases; degrees above N land in p(N+1)
  bool ideal = true;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; a + b <= N; ++b) {
      auto target = L.jprime.at(d, a + b);
      for (auto& x : L.j.at(d, a))
        for (auto& y : L.jprime.at(d, b))
          if (!in_span(target, g.bracket(x, y))) ideal = false;
    }
  L.checks["j_normalizes_jprime"] = ideal;
  // b̄j abelian: brackets of torus pieces vanish below degree N+1
  bool abel = true;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; a + b <= N; ++b)
      for (auto& x : d.t(a))
        for (auto& y : d.t(b))
          if (!is_zero(g.bracket(x, y))) abel = false;
  L.checks["bj_abelian"] = abel;
  // Res kappa(j+, j^{+,perp}) = 0 and Res kappa(j, j^perp) = 0: degree i pairs with -i
  auto pairing_vanishes = [&](const GradedLattice<S>& A, const GradedLattice<S>& B) {
    for (int i = 1; i <= N + 1; ++i)
      for (auto& x : A.at(d, i))
        for (auto& y : B.at(d, -i))
          if (!Field<S>::is_zero(g.kappa(x, y))) return false;
    return true;
  };
  L.checks["jplus_perp_pairing"] = pairing_vanishes(L.jplus, L.jplus_perp);
  L.checks["j_perp_pairing"] = pairing_vanishes(L.j, L.jperp);
  // perfect pairing on b̄j x b̄j*
  std::vector<std::pair<int, Vec<S>>> left, right;
  for (int i = 1; i <= N; ++i) {
    for (auto& x : d.t(i)) left.push_back({i, x});
    for (auto& y : d.t(-i)) right.push_back({-i, y});
  }
  bool perfect = left.size() == right.size();
  if (perfect && !left.empty()) {
    const int k = static_cast<int>(left.size());
    Mat<S> P(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (left[a].first + right[b].first == 0) P(a, b) = g.kappa(left[a].second, right[b].second);
    perfect = !Field<S>::is_zero(det(P));
  }
  L.checks["bj_perfect_pairing"] = perfect;
  return L;
}

// ---- characters ----

template <class S>
struct ToralCharacter {
  std::shared_ptr<const ToralDatum<S>> datum;
  std::map<int, Vec<S>> comp;  // i in [-N, -1] -> coordinates in the basis of t_{Y,i}

  Vec<S> component(int i) const {
    const auto& B = datum->t(i);
    auto it = comp.find(i);
    auto x = datum->g->zero();
    if (it == comp.end()) return x;
    for (std::size_t k = 0; k < B.size(); ++k) axpy(x, it->second[k], B[k]);
    return x;
  }
  // sum Y_i u^i, against du/u
  LieSeries<S> series() const {
    LieSeries<S> s(datum->g->dim, datum->m, kExact);
    for (int i = -datum->N; i <= -1; ++i) s.add_to(i, component(i));
    return s;
  }
};

template <class S>
ToralCharacter<S> make_character(std::shared_ptr<const ToralDatum<S>> d, const std::map<int, Vec<S>>& comps) {
  ToralCharacter<S> c{d, {}};
  for (auto& [i, v] : comps) {
    if (i < -d->N || i > -1) throw DomainError("BadSupport", "character component outside [-N, -1]");
    if (v.size() != d->t(i).size()) throw SchemaError("character component has wrong length for t_{Y," + std::to_string(i) + "}");
    c.comp[i] = v;
  }
  if (!c.comp.count(-d->N)) {
    auto co = coordinates(d->t(-d->N), d->Y);
    c.comp[-d->N] = *co;
  }
  return c;
}

// Seeded random character with leading component Y (or a random regular one when randomize_leading).
template <class S>
ToralCharacter<S> random_character(std::shared_ptr<const ToralDatum<S>> d, std::mt19937& rng, bool randomize_leading = false, int range = 3) {
  std::uniform_int_distribution<int> dist(-range, range);
  std::map<int, Vec<S>> comps;
  for (int i = -d->N + 1; i <= -1; ++i) {
    Vec<S> v;
    for (std::size_t k = 0; k < d->t(i).size(); ++k) v.push_back(from_int<S>(dist(rng)));
    comps[i] = v;
  }
  if (randomize_leading) {
    const auto& B = d->t(-d->N);
    for (int trial = 0; trial < 100; ++trial) {
      Vec<S> v;
      for (std::size_t k = 0; k < B.size(); ++k) v.push_back(from_int<S>(dist(rng)));
      auto x = detail::combine(B, v, d->g->dim);
      if (is_zero(x) || !is_regular_semisimple(*d->g, x)) continue;
      comps[-d->N] = v;
      break;
    }
  }
  return make_character(d, comps);
}

// Airy depth: m = h, N = h + 1.
template <class S>
int airy_window_top(const ToralDatum<S>& d) {
  const auto& g = *d.g;
  const int h = g.coxeter;
  if (d.m != h || d.N != h + 1) throw DomainError("WrongDepth", "character is not at depth (1+h)/h");
  if (h % 2 == 0) return h / 2 + 1;
  if (g.type.letter != 'A') throw DomainError("WrongDepth", "odd Coxeter number outside type A");
  return (h - 1) / 2 + 1;
}

// zero components in t_{Y,i} for -h <= i <= -(top)
template <class S>
bool special_check(const ToralCharacter<S>& phi) {
  const auto& d = *phi.datum;
  const int top = airy_window_top(d);
  for (int i = -d.g->coxeter; i <= -top; ++i)
    if (!is_zero(phi.component(i))) return false;
  return true;
}

// kappa(Y_{-k}, g(k)) = 0 for top <= k <= h-1, g(k) the root spaces of height k
template <class S>
bool relevance_check(const ToralCharacter<S>& phi) {
  const auto& d = *phi.datum;
  const auto& g = *d.g;
  const int top = airy_window_top(d);
  for (int k = top; k <= g.coxeter - 1; ++k) {
    auto y = phi.component(-k);
    for (int b = 0; b < g.dim; ++b)
      if (!g.is_cartan(b) && g.height[b] == k && !Field<S>::is_zero(g.kappa(y, g.basis(b)))) return false;
  }
  return true;
}

}  // namespace isoclinic

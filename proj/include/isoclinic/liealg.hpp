#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "isoclinic/linalg.hpp"

namespace isoclinic {

using IntMat = std::vector<std::vector<int>>;
using Root = std::vector<int>;  // coefficients in the simple roots

struct CartanType {
  char letter = 'A';
  int rank = 1;
  std::string name() const { return std::string(1, letter) + std::to_string(rank); }
  static CartanType parse(const std::string& s) {
    if (s.size() < 2) throw DomainError("UnsupportedType", "unsupported Cartan type: " + s);
    CartanType t{s[0], std::atoi(s.c_str() + 1)};
    const std::string n = t.name();
    if (n != s || !(n == "A1" || n == "A2" || n == "A3" || n == "B2" || n == "C2" || n == "G2"))
      throw DomainError("UnsupportedType", "unsupported Cartan type: " + s);
    return t;
  }
};

namespace detail {

inline std::vector<Root> positive_roots(const IntMat& A) {
  const int n = static_cast<int>(A.size());
  std::vector<Root> roots;
  for (int i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    roots.push_back(r);
  }
  auto is_root = [&](const Root& r) { return std::find(roots.begin(), roots.end(), r) != roots.end(); };
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Root b = roots[k];
    for (int i = 0; i < n; ++i) {
      int p = 0;
      Root c = b;
      while (true) {
        c[i] -= 1;
        if (c[i] < 0 || !is_root(c)) break;
        ++p;
      }
      int pair = 0;  // <beta, alpha_i^vee>
      for (int j = 0; j < n; ++j) pair += b[j] * A[i][j];
      int q = p - pair;
      if (q > 0) {
        Root d = b;
        d[i] += 1;
        if (!is_root(d)) roots.push_back(d);
      }
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  return roots;
}

using RatMat = Mat<Rational>;

inline RatMat elem(int n, int i, int j, long v = 1) {
  RatMat M(n, n);
  M(i, j) = v;
  return M;
}

// Chevalley generators e_i, f_i in a faithful representation.
inline void realize(const CartanType& t, int& V, std::vector<RatMat>& e, std::vector<RatMat>& f) {
  e.clear();
  f.clear();
  if (t.letter == 'A') {
    V = t.rank + 1;
    for (int i = 0; i < t.rank; ++i) {
      e.push_back(elem(V, i, i + 1));
      f.push_back(elem(V, i + 1, i));
    }
    return;
  }
  if (t.letter == 'B' || t.letter == 'C') {
    V = 4;
    RatMat es = elem(4, 0, 1) - elem(4, 3, 2), fs = elem(4, 1, 0) - elem(4, 2, 3);  // short
    RatMat el = elem(4, 1, 3), fl = elem(4, 3, 1);                                  // long
    if (t.letter == 'C') {
      e = {es, el};
      f = {fs, fl};
    } else {
      e = {el, es};
      f = {fl, fs};
    }
    return;
  }
  // G2 on the 7-dimensional representation, alpha_1 short
  V = 7;
  e = {elem(7, 0, 1) + elem(7, 2, 3, 2) + elem(7, 3, 4, 2) + elem(7, 5, 6), elem(7, 1, 2) + elem(7, 4, 5)};
  f = {elem(7, 1, 0) + elem(7, 3, 2) + elem(7, 4, 3) + elem(7, 6, 5), elem(7, 2, 1) + elem(7, 5, 4)};
}

inline RatMat bracket(const RatMat& X, const RatMat& Y) { return X * Y - Y * X; }

template <class S>
Mat<S> convert(const RatMat& M) {
  Mat<S> R(M.rows, M.cols);
  for (std::size_t i = 0; i < M.a.size(); ++i) R.a[i] = Field<S>::from_rational(M.a[i]);
  return R;
}

}  // namespace detail

// A[i][j] = <alpha_i^vee, alpha_j> = alpha_j(H_i), read off the realization.
// A: chain, B2: alpha_2 short, C2: alpha_1 short, G2: alpha_1 short.
inline IntMat cartan_matrix(const CartanType& t) {
  int V;
  std::vector<detail::RatMat> e, f;
  detail::realize(t, V, e, f);
  IntMat A(t.rank, std::vector<int>(t.rank));
  for (int i = 0; i < t.rank; ++i) {
    auto H = detail::bracket(e[i], f[i]);
    for (int j = 0; j < t.rank; ++j) {
      auto c = detail::bracket(H, e[j]);
      for (std::size_t k = 0; k < c.a.size(); ++k)
        if (e[j].a[k] != 0) {
          Rational q = c.a[k] / e[j].a[k];
          A[i][j] = static_cast<int>(q.get_num().get_si());
          break;
        }
    }
  }
  return A;
}

template <class S>
class SimpleLieAlgebra {
 public:
  using V = Vec<S>;

  CartanType type;
  IntMat cartan;            // A[i][j] = alpha_j(H_i)
  std::vector<int> perm;    // label permutation relative to the standard realization
  int n = 0;                // rank
  int dim = 0;
  int rep_dim = 0;
  std::vector<Root> pos_roots;
  // per basis index: root coefficients (zero for Cartan) and height
  std::vector<Root> basis_root;
  std::vector<int> height;
  std::vector<std::string> labels;
  std::vector<Mat<S>> rep;  // faithful representation of each basis element
  // structure constants: br[a*dim+b] = sparse [a_a, b_b]
  std::vector<std::vector<std::pair<int, S>>> br;
  Mat<S> killing;
  std::vector<int> degrees;
  int coxeter = 0;
  V rho_check, p_minus, p_plus;
  std::vector<V> kostant;  // p_1..p_n

  int cartan_index(int i) const { return i; }
  int root_index(const Root& r) const {
    for (int k = 0; k < dim; ++k)
      if (basis_root[k] == r) return k;
    return -1;
  }
  bool is_cartan(int k) const { return k < n; }
  int num_roots() const { return dim - n; }

  V zero() const { return zero_vec<S>(dim); }
  V basis(int k) const { return unit_vec<S>(dim, k); }

  V bracket(const V& x, const V& y) const {
    V r = zero();
    for (int a = 0; a < dim; ++a) {
      if (Field<S>::is_zero(x[a])) continue;
      for (int b = 0; b < dim; ++b) {
        if (Field<S>::is_zero(y[b])) continue;
        S s = x[a] * y[b];
        for (auto& [k, c] : br[a * dim + b]) r[k] += s * c;
      }
    }
    return r;
  }

  Mat<S> ad(const V& x) const {
    Mat<S> M(dim, dim);
    for (int a = 0; a < dim; ++a) {
      if (Field<S>::is_zero(x[a])) continue;
      for (int b = 0; b < dim; ++b)
        for (auto& [k, c] : br[a * dim + b]) M(k, b) += x[a] * c;
    }
    return M;
  }

  Mat<S> represent(const V& x) const {
    Mat<S> M(rep_dim, rep_dim);
    for (int a = 0; a < dim; ++a)
      if (!Field<S>::is_zero(x[a]))
        for (std::size_t i = 0; i < M.a.size(); ++i)
          if (!Field<S>::is_zero(rep[a].a[i])) M.a[i] += x[a] * rep[a].a[i];
    return M;
  }

  // Inverse of represent() on its image; nullopt when M is not in rho(g).
  std::optional<V> from_rep(const Mat<S>& M) const {
    V sel(rep_rows_.size());
    for (std::size_t i = 0; i < rep_rows_.size(); ++i) sel[i] = M.a[rep_rows_[i]];
    V x = rep_inv_ * sel;
    Mat<S> back = represent(x);
    for (std::size_t i = 0; i < M.a.size(); ++i)
      if (!Field<S>::is_zero(back.a[i] - M.a[i])) return std::nullopt;
    return x;
  }

  S kappa(const V& x, const V& y) const { return dot(x, killing * y); }

  // coefficient of E_beta weight: beta(H) for Cartan element h (coordinates in H_i)
  S root_value(const Root& beta, const V& h) const {
    S s = from_int<S>(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (beta[j] != 0 && cartan[i][j] != 0) s += h[i] * from_int<S>(static_cast<long>(beta[j]) * cartan[i][j]);
    return s;
  }

  // lazily built data owned by other headers (invariant polynomials)
  mutable std::shared_ptr<void> invariant_cache;
  mutable std::once_flag invariant_once;

  // called by build_algebra
  void init(const CartanType& t, const IntMat& A, const std::vector<int>& label_perm);

 private:
  std::vector<std::size_t> rep_rows_;
  Mat<S> rep_inv_;
};

template <class S>
void SimpleLieAlgebra<S>::init(const CartanType& t, const IntMat& A, const std::vector<int>& label_perm) {
  using detail::RatMat;
  type = t;
  cartan = A;
  perm = label_perm;
  n = t.rank;
  std::vector<RatMat> e0, f0;
  detail::realize(t, rep_dim, e0, f0);
  std::vector<RatMat> e(n), f(n);
  for (int i = 0; i < n; ++i) {
    e[i] = e0[perm[i]];
    f[i] = f0[perm[i]];
  }
  pos_roots = detail::positive_roots(A);
  const int np = static_cast<int>(pos_roots.size());
  dim = n + 2 * np;

  // root vectors for positive and negative roots via the minimal simple root
  std::map<Root, RatMat> Epos, Eneg;
  std::vector<RatMat> H(n);
  for (int i = 0; i < n; ++i) {
    H[i] = detail::bracket(e[i], f[i]);
    Epos[pos_roots[i]] = e[i];
    Eneg[pos_roots[i]] = f[i];
  }
  auto has_root = [&](const Root& r) { return std::find(pos_roots.begin(), pos_roots.end(), r) != pos_roots.end(); };
  auto eval_root = [&](const Root& beta, const RatMat& h) {
    // beta(h) read off from [h, E_beta] = beta(h) E_beta
    RatMat c = detail::bracket(h, Epos.at(beta));
    const RatMat& E = Epos.at(beta);
    for (std::size_t k = 0; k < E.a.size(); ++k)
      if (E.a[k] != 0) return Rational(c.a[k] / E.a[k]);
    throw std::logic_error("zero root vector");
  };
  for (int k = n; k < np; ++k) {
    const Root& beta = pos_roots[k];
    int i = 0;
    Root gamma;
    for (; i < n; ++i) {
      if (beta[i] == 0) continue;
      gamma = beta;
      gamma[i] -= 1;
      if (has_root(gamma)) break;
    }
    int p = 0;
    Root g2 = gamma;
    while (true) {
      g2[i] -= 1;
      if (g2[i] < 0 || !has_root(g2)) break;
      ++p;
    }
    RatMat Eb = detail::bracket(e[i], Epos.at(gamma));
    for (auto& x : Eb.a) x /= (p + 1);
    Epos[beta] = Eb;
    RatMat Fb = detail::bracket(f[i], Eneg.at(gamma));
    RatMat C = detail::bracket(Eb, Fb);
    Rational lam = eval_root(beta, C);
    for (auto& x : Fb.a) x *= Rational(2) / lam;
    Eneg[beta] = Fb;
  }

  std::vector<RatMat> basis_mats;
  basis_root.clear();
  height.clear();
  labels.clear();
  for (int i = 0; i < n; ++i) {
    basis_mats.push_back(H[i]);
    basis_root.push_back(Root(n, 0));
    height.push_back(0);
    labels.push_back("H" + std::to_string(i + 1));
  }
  auto root_label = [&](const Root& r, bool neg) {
    std::string s = neg ? "E-" : "E";
    for (int c : r) s += std::to_string(c);
    return s;
  };
  for (auto& r : pos_roots) {
    basis_mats.push_back(Epos[r]);
    basis_root.push_back(r);
    height.push_back(std::accumulate(r.begin(), r.end(), 0));
    labels.push_back(root_label(r, false));
  }
  for (auto& r : pos_roots) {
    basis_mats.push_back(Eneg[r]);
    Root m = r;
    for (auto& c : m) c = -c;
    basis_root.push_back(m);
    height.push_back(-std::accumulate(r.begin(), r.end(), 0));
    labels.push_back(root_label(r, true));
  }

  // coordinate extraction: pick matrix entries making the basis matrix invertible
  const int V2 = rep_dim * rep_dim;
  RatMat B(V2, dim);
  for (int k = 0; k < dim; ++k)
    for (int q = 0; q < V2; ++q) B(q, k) = basis_mats[k].a[q];
  {
    RatMat Bt = transpose(B);
    RatMat R = Bt;
    auto piv = rref(R);
    if (static_cast<int>(piv.size()) != dim) throw std::logic_error("basis matrices are dependent");
    rep_rows_.assign(piv.begin(), piv.end());
    RatMat sq(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int k = 0; k < dim; ++k) sq(r, k) = B(static_cast<int>(rep_rows_[r]), k);
    auto inv = inverse(sq);
    rep_inv_ = detail::convert<S>(*inv);
  }
  Mat<Rational> sqr(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int k = 0; k < dim; ++k) sqr(r, k) = B(static_cast<int>(rep_rows_[r]), k);
  Mat<Rational> sq_inv = *inverse(sqr);

  rep.clear();
  for (auto& M : basis_mats) rep.push_back(detail::convert<S>(M));
  br.assign(static_cast<std::size_t>(dim) * dim, {});
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      RatMat C = detail::bracket(basis_mats[a], basis_mats[b]);
      Vec<Rational> sel(dim);
      for (int r = 0; r < dim; ++r) sel[r] = C.a[rep_rows_[r]];
      Vec<Rational> c = sq_inv * sel;
      // verify the bracket lies in the span
      RatMat back(rep_dim, rep_dim);
      for (int k = 0; k < dim; ++k)
        if (c[k] != 0)
          for (int q = 0; q < V2; ++q) back.a[q] += c[k] * basis_mats[k].a[q];
      for (int q = 0; q < V2; ++q)
        if (back.a[q] != C.a[q]) throw std::logic_error("realization is not closed under brackets");
      for (int k = 0; k < dim; ++k)
        if (c[k] != 0) br[a * dim + b].push_back({k, Field<S>::from_rational(c[k])});
    }

  killing = Mat<S>(dim, dim);
  {
    std::vector<Mat<S>> ads;
    for (int a = 0; a < dim; ++a) ads.push_back(ad(basis(a)));
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        S t = trace(ads[a] * ads[b]);
        killing(a, b) = t;
        killing(b, a) = t;
      }
  }

  // rho_check: alpha_j(rho) = 1 for all j, i.e. sum_i x_i A[i][j] = 1
  {
    Mat<Rational> At(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) At(j, i) = A[i][j];
    Vec<Rational> ones(n, Rational(1));
    auto x = *solve(At, ones);
    rho_check = zero();
    p_plus = zero();
    p_minus = zero();
    for (int i = 0; i < n; ++i) {
      rho_check[i] = Field<S>::from_rational(x[i]);
      p_plus[root_index(pos_roots[i])] = Field<S>::from_rational(2 * x[i]);
      Root m = pos_roots[i];
      for (auto& c : m) c = -c;
      p_minus[root_index(m)] = from_int<S>(1);
    }
  }

  // Kostant basis: weight spaces of the centralizer of p_1
  kostant.clear();
  degrees.clear();
  {
    Mat<S> adp = ad(p_plus);
    int maxh = *std::max_element(height.begin(), height.end());
    for (int w = 1; w <= maxh; ++w) {
      std::vector<int> idx;
      for (int k = 0; k < dim; ++k)
        if (height[k] == w) idx.push_back(k);
      Mat<S> M(dim, static_cast<int>(idx.size()));
      for (int r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) M(r, static_cast<int>(c)) = adp(r, idx[c]);
      auto ker = kernel(M);
      if (ker.empty()) continue;
      // reduced row echelon basis of the kernel, leading coefficient 1
      auto rb = span_basis(ker, static_cast<int>(idx.size()));
      for (auto& v : rb) {
        V x = zero();
        for (std::size_t c = 0; c < idx.size(); ++c) x[idx[c]] = v[c];
        kostant.push_back(x);
        degrees.push_back(w + 1);
      }
    }
    // the top vector must be the highest-root vector; rescale to coefficient 1
    V& top = kostant.back();
    int ti = root_index(pos_roots.back());
    S inv = from_int<S>(1) / top[ti];
    top = scale(top, inv);
    coxeter = degrees.back();
  }
}

inline bool cartan_equal_perm(const IntMat& A, const IntMat& B, const std::vector<int>& p) {
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j)
      if (A[i][j] != B[p[i]][p[j]]) return false;
  return true;
}

template <class S>
std::shared_ptr<const SimpleLieAlgebra<S>> build_algebra(const CartanType& t) {
  auto g = std::make_shared<SimpleLieAlgebra<S>>();
  std::vector<int> id(t.rank);
  std::iota(id.begin(), id.end(), 0);
  g->init(t, cartan_matrix(t), id);
  return g;
}

template <class S>
std::shared_ptr<const SimpleLieAlgebra<S>> build_algebra(const std::string& name) {
  return build_algebra<S>(CartanType::parse(name));
}

// Realize the algebra whose Cartan matrix is A (any labelling of a supported type).
template <class S>
std::shared_ptr<const SimpleLieAlgebra<S>> build_from_cartan_matrix(const IntMat& A) {
  for (const char* name : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    CartanType t = CartanType::parse(name);
    if (t.rank != static_cast<int>(A.size())) continue;
    IntMat B = cartan_matrix(t);
    std::vector<int> p(t.rank);
    std::iota(p.begin(), p.end(), 0);
    do {
      if (cartan_equal_perm(A, B, p)) {
        auto g = std::make_shared<SimpleLieAlgebra<S>>();
        g->init(t, A, p);
        return g;
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  throw DomainError("UnsupportedType", "Cartan matrix of unsupported type");
}

// Langlands dual: transposed Cartan matrix.
template <class S>
std::shared_ptr<const SimpleLieAlgebra<S>> dual_algebra(const SimpleLieAlgebra<S>& g) {
  IntMat At(g.n, std::vector<int>(g.n));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) At[i][j] = g.cartan[j][i];
  return build_from_cartan_matrix<S>(At);
}

// ---- gradings ----

struct Grading {
  int m = 1;
  std::vector<std::vector<int>> pieces;  // basis indices of g_i, i = 0..m-1
};

inline int mod(long a, long m) {
  long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

template <class S>
Grading grading_by_principal_cocharacter(const SimpleLieAlgebra<S>& g, int m) {
  if (m < 1) throw DomainError("BadModulus", "grading modulus must be positive");
  Grading gr;
  gr.m = m;
  gr.pieces.assign(m, {});
  for (int k = 0; k < g.dim; ++k) gr.pieces[mod(g.height[k], m)].push_back(k);
  return gr;
}

template <class S>
std::vector<Vec<S>> piece_basis(const SimpleLieAlgebra<S>& g, const Grading& gr, long i) {
  std::vector<Vec<S>> out;
  for (int k : gr.pieces[mod(i, gr.m)]) out.push_back(g.basis(k));
  return out;
}

// ---- centralizers and Jordan decomposition ----

template <class S>
std::vector<Vec<S>> centralizer(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& elems) {
  if (elems.empty()) {
    std::vector<Vec<S>> all;
    for (int k = 0; k < g.dim; ++k) all.push_back(g.basis(k));
    return all;
  }
  Mat<S> M(g.dim * static_cast<int>(elems.size()), g.dim);
  for (std::size_t e = 0; e < elems.size(); ++e) {
    Mat<S> A = g.ad(elems[e]);
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) M(static_cast<int>(e) * g.dim + i, j) = A(i, j);
  }
  return span_basis(kernel(M), g.dim);
}

// centralizer of elems inside the subspace spanned by sub
template <class S>
std::vector<Vec<S>> centralizer_in(const SimpleLieAlgebra<S>& g, const std::vector<Vec<S>>& sub, const std::vector<Vec<S>>& elems) {
  if (sub.empty()) return {};
  Mat<S> M(g.dim * static_cast<int>(elems.size()), static_cast<int>(sub.size()));
  for (std::size_t e = 0; e < elems.size(); ++e)
    for (std::size_t c = 0; c < sub.size(); ++c) {
      auto b = g.bracket(elems[e], sub[c]);
      for (int i = 0; i < g.dim; ++i) M(static_cast<int>(e) * g.dim + i, static_cast<int>(c)) = b[i];
    }
  std::vector<Vec<S>> out;
  for (auto& k : kernel(M)) {
    auto w = g.zero();
    for (std::size_t c = 0; c < sub.size(); ++c) axpy(w, k[c], sub[c]);
    out.push_back(w);
  }
  return span_basis(out, g.dim);
}

namespace detail {

// Squarefree polynomial with the same roots as the characteristic polynomial.
template <class S>
Poly<S> radical_poly(const Mat<S>& X) {
  if constexpr (Field<S>::exact) {
    auto chi = charpoly(X);
    auto g = poly_gcd(chi, poly_derivative(chi));
    return poly_monic(poly_divmod(chi, g).first);
  } else {
    const int n = X.rows;
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = X(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    double scale_ = std::max(1.0, M.cwiseAbs().maxCoeff());
    double tol = 1e-6 * scale_;
    std::vector<Complex> cl;
    for (int i = 0; i < n; ++i) {
      Complex z = es.eigenvalues()(i);
      bool found = false;
      for (auto& c : cl)
        if (std::abs(c - z) < tol) found = true;
      if (!found) cl.push_back(z);
    }
    Poly<S> p{from_int<S>(1)};
    for (auto& c : cl) p = poly_mul(p, Poly<S>{-c, from_int<S>(1)});
    return p;
  }
}

template <class S>
Mat<S> semisimple_part_matrix(const Mat<S>& X) {
  auto p = radical_poly(X);
  auto dp = poly_derivative(p);
  Mat<S> s = X;
  for (int it = 0; it < 64; ++it) {
    Mat<S> ps = poly_eval(p, s);
    if (ps.is_zero()) return s;
    auto inv = inverse(poly_eval(dp, s));
    if (!inv) throw std::logic_error("Newton step for the Jordan decomposition is singular");
    s = s - ps * (*inv);
  }
  throw std::logic_error("Jordan decomposition did not converge");
}

}  // namespace detail

template <class S>
std::pair<Vec<S>, Vec<S>> jordan_decompose(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  Mat<S> X = g.represent(x);
  Mat<S> s = detail::semisimple_part_matrix(X);
  auto xs = g.from_rep(s);
  if (!xs) throw std::logic_error("semisimple part left the Lie algebra");
  return {*xs, sub(x, *xs)};
}

template <class S>
bool is_semisimple(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  return is_zero(jordan_decompose(g, x).second);
}

template <class S>
bool is_nilpotent(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  Mat<S> A = g.ad(x), P = A;
  for (int k = 1; k < g.dim; ++k) P = P * A;
  return P.is_zero();
}

template <class S>
bool is_regular_semisimple(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  if (static_cast<int>(centralizer(g, {x}).size()) != g.n) return false;
  return is_semisimple(g, x);
}

// exp(ad X) for ad-nilpotent X (finite sum)
template <class S>
Mat<S> exp_ad_nilpotent(const SimpleLieAlgebra<S>& g, const Vec<S>& x) {
  Mat<S> A = g.ad(x), R = Mat<S>::identity(g.dim), P = Mat<S>::identity(g.dim);
  for (int k = 1; k <= g.dim; ++k) {
    P = scale(P * A, from_int<S>(1) / from_int<S>(k));
    if (P.is_zero()) return R;
    R = R + P;
  }
  throw DomainError("NotNilpotent", "exponential of a non-nilpotent element");
}

}  // namespace isoclinic

#pragma once

#include <deque>
#include <set>

#include "isoclinic/liealg.hpp"

namespace isoclinic {

// Weyl group element acting on the Cartan in the coroot basis H_1..H_n.
struct WeylElement {
  Mat<Rational> matrix;
  int order = 1;
  std::vector<int> word;  // simple reflection indices, applied right to left
};

inline Mat<Rational> simple_reflection(const IntMat& A, int i) {
  const int n = static_cast<int>(A.size());
  // s_i(H_j) = H_j - alpha_i(H_j) H_i
  auto M = Mat<Rational>::identity(n);
  for (int j = 0; j < n; ++j) M(i, j) -= A[j][i];
  return M;
}

inline int matrix_order(const Mat<Rational>& M) {
  auto I = Mat<Rational>::identity(M.rows);
  auto P = M;
  for (int k = 1; k <= 64; ++k) {
    if (P.a == I.a) return k;
    P = P * M;
  }
  throw std::logic_error("Weyl element of unexpected order");
}

template <class S>
std::vector<WeylElement> weyl_group(const SimpleLieAlgebra<S>& g) {
  if (g.n > 3) throw DomainError("RankTooLarge", "Weyl enumeration is capped at rank 3");
  std::vector<Mat<Rational>> gens;
  for (int i = 0; i < g.n; ++i) gens.push_back(simple_reflection(g.cartan, i));
  std::vector<WeylElement> out;
  std::set<std::vector<std::string>> seen;
  auto key = [](const Mat<Rational>& M) {
    std::vector<std::string> k;
    for (auto& x : M.a) k.push_back(to_string(x));
    return k;
  };
  std::deque<WeylElement> q;
  WeylElement id{Mat<Rational>::identity(g.n), 1, {}};
  q.push_back(id);
  seen.insert(key(id.matrix));
  while (!q.empty()) {
    auto w = q.front();
    q.pop_front();
    w.order = matrix_order(w.matrix);
    out.push_back(w);
    for (int i = 0; i < g.n; ++i) {
      WeylElement v{gens[i] * w.matrix, 1, w.word};
      v.word.insert(v.word.begin(), i);
      if (seen.insert(key(v.matrix)).second) q.push_back(v);
    }
  }
  return out;
}

// beta(h) for h in coroot coordinates, as a row vector
inline std::vector<Rational> root_functional(const IntMat& A, const Root& beta) {
  const int n = static_cast<int>(A.size());
  std::vector<Rational> f(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f[i] += beta[j] * A[i][j];
  return f;
}

template <class S>
std::vector<Root> all_roots(const SimpleLieAlgebra<S>& g) {
  std::vector<Root> r;
  for (int k = g.n; k < g.dim; ++k) r.push_back(g.basis_root[k]);
  return r;
}

// Eigenspace of w for the eigenvalue zeta_ord^k, over Q(zeta_ord).
inline std::vector<Vec<Cyc>> weyl_eigenspace(const WeylElement& w, int k) {
  const int n = w.matrix.rows;
  Mat<Cyc> M(n, n);
  Cyc lam = Cyc::zeta(w.order, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = Cyc(w.matrix(i, j)) - (i == j ? lam : Cyc(0));
  return kernel(M);
}

template <class S>
bool is_elliptic(const SimpleLieAlgebra<S>&, const WeylElement& w) {
  return weyl_eigenspace(w, 0).empty();
}

// Some eigenspace of w is not contained in any root hyperplane.
template <class S>
bool is_regular_element(const SimpleLieAlgebra<S>& g, const WeylElement& w) {
  auto roots = all_roots(g);
  for (int k = 0; k < w.order; ++k) {
    auto E = weyl_eigenspace(w, k);
    if (E.empty()) continue;
    bool ok = true;
    for (auto& beta : roots) {
      auto f = root_functional(g.cartan, beta);
      bool nonzero = false;
      for (auto& v : E) {
        Cyc s(0);
        for (int i = 0; i < g.n; ++i) s += Cyc(f[i]) * v[i];
        if (!s.is_zero()) nonzero = true;
      }
      if (!nonzero) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

template <class S>
std::set<int> regular_elliptic_numbers(const SimpleLieAlgebra<S>& g) {
  std::set<int> out;
  for (auto& w : weyl_group(g))
    if (w.order > 1 && is_elliptic(g, w) && is_regular_element(g, w)) out.insert(w.order);
  return out;
}

}  // namespace isoclinic

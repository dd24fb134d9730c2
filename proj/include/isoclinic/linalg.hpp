#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "isoclinic/scalar.hpp"

namespace isoclinic {

template <class S>
using Vec = std::vector<S>;

template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, from_int<S>(0)) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = from_int<S>(1);
    return m;
  }
  static Mat from_columns(const std::vector<Vec<S>>& cols_, int r) {
    Mat m(r, static_cast<int>(cols_.size()));
    for (int j = 0; j < m.cols; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = cols_[j][i];
    return m;
  }
  static Mat from_rows(const std::vector<Vec<S>>& rows_, int c) {
    Mat m(static_cast<int>(rows_.size()), c);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = rows_[i][j];
    return m;
  }
  S& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  Vec<S> column(int j) const {
    Vec<S> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<S> row(int i) const { return Vec<S>(a.begin() + static_cast<std::ptrdiff_t>(i) * cols, a.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols); }
  bool is_zero() const {
    for (auto& x : a)
      if (!Field<S>::is_zero(x)) return false;
    return true;
  }
};

template <class S>
Mat<S> operator*(const Mat<S>& A, const Mat<S>& B) {
  Mat<S> C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const S& x = A(i, k);
      if (Field<S>::is_zero(x)) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += x * B(k, j);
    }
  return C;
}

template <class S>
Mat<S> operator+(Mat<S> A, const Mat<S>& B) {
  for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] += B.a[i];
  return A;
}

template <class S>
Mat<S> operator-(Mat<S> A, const Mat<S>& B) {
  for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] -= B.a[i];
  return A;
}

template <class S>
Mat<S> scale(Mat<S> A, const S& s) {
  for (auto& x : A.a) x *= s;
  return A;
}

template <class S>
Vec<S> operator*(const Mat<S>& A, const Vec<S>& v) {
  Vec<S> r(A.rows, from_int<S>(0));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (!Field<S>::is_zero(v[j])) r[i] += A(i, j) * v[j];
  return r;
}

template <class S>
Mat<S> transpose(const Mat<S>& A) {
  Mat<S> T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

template <class S>
S trace(const Mat<S>& A) {
  S t = from_int<S>(0);
  for (int i = 0; i < A.rows; ++i) t += A(i, i);
  return t;
}

template <class S>
Vec<S> zero_vec(int n) {
  return Vec<S>(n, from_int<S>(0));
}

template <class S>
Vec<S> unit_vec(int n, int i) {
  auto v = zero_vec<S>(n);
  v[i] = from_int<S>(1);
  return v;
}

template <class S>
Vec<S> add(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class S>
Vec<S> sub(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class S>
Vec<S> scale(Vec<S> a, const S& s) {
  for (auto& x : a) x *= s;
  return a;
}

template <class S>
void axpy(Vec<S>& y, const S& s, const Vec<S>& x) {
  if (Field<S>::is_zero(s)) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!Field<S>::is_zero(x[i])) y[i] += s * x[i];
}

template <class S>
bool is_zero(const Vec<S>& v) {
  for (auto& x : v)
    if (!Field<S>::is_zero(x)) return false;
  return true;
}

template <class S>
bool vec_equal(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!Field<S>::is_zero(a[i] - b[i])) return false;
  return true;
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  S s = from_int<S>(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!Field<S>::is_zero(a[i]) && !Field<S>::is_zero(b[i])) s += a[i] * b[i];
  return s;
}

// In-place reduced row echelon form; returns pivot columns.
template <class S>
std::vector<int> rref(Mat<S>& A) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int best = -1;
    double bm = 0;
    for (int i = r; i < A.rows; ++i) {
      double m = Field<S>::magnitude(A(i, c));
      if (!Field<S>::is_zero(A(i, c)) && m > bm) {
        bm = m;
        best = i;
        if constexpr (Field<S>::exact) break;
      }
    }
    if (best < 0) {
      if constexpr (!Field<S>::exact)
        for (int i = r; i < A.rows; ++i) A(i, c) = from_int<S>(0);
      continue;
    }
    if (best != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A(r, j), A(best, j));
    S inv = from_int<S>(1) / A(r, c);
    for (int j = c; j < A.cols; ++j) A(r, j) *= inv;
    A(r, c) = from_int<S>(1);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || Field<S>::is_zero(A(i, c))) continue;
      S f = A(i, c);
      for (int j = c; j < A.cols; ++j) A(i, j) -= f * A(r, j);
      A(i, c) = from_int<S>(0);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class S>
int rank(Mat<S> A) {
  return static_cast<int>(rref(A).size());
}

// Basis of the null space {x : A x = 0}.
template <class S>
std::vector<Vec<S>> kernel(Mat<S> A) {
  auto piv = rref(A);
  std::vector<bool> is_piv(A.cols, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec<S>> out;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    auto v = zero_vec<S>(A.cols);
    v[f] = from_int<S>(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& A, const Vec<S>& b) {
  Mat<S> M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    M(i, A.cols) = b[i];
  }
  auto piv = rref(M);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  if constexpr (!Field<S>::exact) {
    for (int i = static_cast<int>(piv.size()); i < M.rows; ++i)
      if (!Field<S>::is_zero(M(i, A.cols))) return std::nullopt;
  }
  auto x = zero_vec<S>(A.cols);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(static_cast<int>(r), A.cols);
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& A) {
  const int n = A.rows;
  Mat<S> M(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = from_int<S>(1);
  }
  auto piv = rref(M);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat<S> R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = M(i, n + j);
  return R;
}

// Row-reduced basis of span(vs).
template <class S>
std::vector<Vec<S>> span_basis(const std::vector<Vec<S>>& vs, int dim) {
  if (vs.empty()) return {};
  Mat<S> M = Mat<S>::from_rows(vs, dim);
  auto piv = rref(M);
  std::vector<Vec<S>> out;
  for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(M.row(static_cast<int>(r)));
  return out;
}

// Coordinates of v in the (independent) basis, or nullopt if v is not in the span.
template <class S>
std::optional<Vec<S>> coordinates(const std::vector<Vec<S>>& basis, const Vec<S>& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vec<S>{};
    return std::nullopt;
  }
  return solve(Mat<S>::from_columns(basis, static_cast<int>(v.size())), v);
}

template <class S>
bool in_span(const std::vector<Vec<S>>& basis, const Vec<S>& v) {
  return coordinates(basis, v).has_value();
}

template <class S>
std::vector<Vec<S>> intersect(const std::vector<Vec<S>>& U, const std::vector<Vec<S>>& V, int dim) {
  if (U.empty() || V.empty()) return {};
  Mat<S> M(dim, static_cast<int>(U.size() + V.size()));
  for (int i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < U.size(); ++j) M(i, static_cast<int>(j)) = U[j][i];
    for (std::size_t j = 0; j < V.size(); ++j) M(i, static_cast<int>(U.size() + j)) = -V[j][i];
  }
  std::vector<Vec<S>> out;
  for (auto& k : kernel(M)) {
    auto w = zero_vec<S>(dim);
    for (std::size_t j = 0; j < U.size(); ++j) axpy(w, k[j], U[j]);
    out.push_back(w);
  }
  return span_basis(out, dim);
}

// Projection onto span(A) along span(B); A and B must be complementary.
template <class S>
struct SplitProjector {
  std::vector<Vec<S>> A, B;
  Mat<S> inv;  // inverse of [A | B]
  int dim = 0;
  SplitProjector() = default;
  SplitProjector(std::vector<Vec<S>> a, std::vector<Vec<S>> b, int n) : A(std::move(a)), B(std::move(b)), dim(n) {
    std::vector<Vec<S>> cols = A;
    cols.insert(cols.end(), B.begin(), B.end());
    if (static_cast<int>(cols.size()) != n) throw std::logic_error("SplitProjector: dimensions do not add up");
    auto I = inverse(Mat<S>::from_columns(cols, n));
    if (!I) throw std::logic_error("SplitProjector: subspaces are not complementary");
    inv = *I;
  }
  // coordinates in the A basis
  Vec<S> coords_a(const Vec<S>& v) const {
    auto c = inv * v;
    c.resize(A.size());
    return c;
  }
  Vec<S> coords_b(const Vec<S>& v) const {
    auto c = inv * v;
    return Vec<S>(c.begin() + static_cast<std::ptrdiff_t>(A.size()), c.end());
  }
  Vec<S> project_a(const Vec<S>& v) const {
    auto c = coords_a(v);
    auto w = zero_vec<S>(dim);
    for (std::size_t j = 0; j < A.size(); ++j) axpy(w, c[j], A[j]);
    return w;
  }
  Vec<S> project_b(const Vec<S>& v) const { return sub(v, project_a(v)); }
};

// ---- univariate polynomials, low degree first ----
template <class S>
using Poly = std::vector<S>;

template <class S>
void trim(Poly<S>& p) {
  while (!p.empty() && Field<S>::is_zero(p.back())) p.pop_back();
}

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<S> c(a.size() + b.size() - 1, from_int<S>(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

template <class S>
Poly<S> poly_sub(Poly<S> a, const Poly<S>& b) {
  if (a.size() < b.size()) a.resize(b.size(), from_int<S>(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

template <class S>
Poly<S> poly_derivative(const Poly<S>& p) {
  Poly<S> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * from_int<S>(static_cast<long>(i)));
  trim(d);
  return d;
}

// a = q b + r
template <class S>
std::pair<Poly<S>, Poly<S>> poly_divmod(Poly<S> a, Poly<S> b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::logic_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly<S> q(a.size() - b.size() + 1, from_int<S>(0));
  S lead_inv = from_int<S>(1) / b.back();
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    S c = a[i] * lead_inv;
    q[i - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
    a[i] = from_int<S>(0);
  }
  trim(a);
  trim(q);
  return {q, a};
}

template <class S>
Poly<S> poly_monic(Poly<S> p) {
  trim(p);
  if (p.empty()) return p;
  S inv = from_int<S>(1) / p.back();
  for (auto& x : p) x *= inv;
  return p;
}

template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

template <class S>
Mat<S> poly_eval(const Poly<S>& p, const Mat<S>& X) {
  Mat<S> R(X.rows, X.cols);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    R = R * X;
    for (int k = 0; k < X.rows; ++k) R(k, k) += p[i];
  }
  return R;
}

// Characteristic polynomial det(x I - A) by Faddeev-LeVerrier (char 0).
template <class S>
Poly<S> charpoly(const Mat<S>& A) {
  const int n = A.rows;
  Poly<S> c(n + 1, from_int<S>(0));
  c[n] = from_int<S>(1);
  Mat<S> M(n, n);
  for (int k = 1; k <= n; ++k) {
    Mat<S> AM = A * M;
    for (int i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
    M = AM;
    Mat<S> AMk = A * M;
    c[n - k] = -trace(AMk) / from_int<S>(k);
  }
  return c;
}

template <class S>
S det(const Mat<S>& A) {
  auto c = charpoly(A);
  return (A.rows % 2 == 0) ? c[0] : S(-c[0]);
}

}  // namespace isoclinic

namespace isoclinic {

// Independent vectors with a precomputed left inverse, for fast coordinates.
template <class S>
struct Frame {
  std::vector<Vec<S>> vecs;
  std::vector<int> rows;
  Mat<S> inv;
  int dim = 0;

  Frame() = default;
  Frame(std::vector<Vec<S>> v, int n) : vecs(std::move(v)), dim(n) {
    if (vecs.empty()) return;
    Mat<S> T = Mat<S>::from_rows(vecs, n);
    Mat<S> R = T;
    auto piv = rref(R);
    if (piv.size() != vecs.size()) throw std::logic_error("Frame: vectors are dependent");
    rows = piv;
    Mat<S> sq(static_cast<int>(vecs.size()), static_cast<int>(vecs.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k < vecs.size(); ++k) sq(static_cast<int>(r), static_cast<int>(k)) = vecs[k][rows[r]];
    inv = *inverse(sq);
  }
  int size() const { return static_cast<int>(vecs.size()); }
  // coordinates of v, assuming v lies in the span
  Vec<S> coords(const Vec<S>& v) const {
    Vec<S> sel(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) sel[r] = v[rows[r]];
    return inv * sel;
  }
  Vec<S> combine(const Vec<S>& c) const {
    auto w = zero_vec<S>(dim);
    for (std::size_t k = 0; k < vecs.size(); ++k) axpy(w, c[k], vecs[k]);
    return w;
  }
  bool contains(const Vec<S>& v) const {
    if (vecs.empty()) return isoclinic::is_zero(v);
    return vec_equal(combine(coords(v)), v);
  }
};

}  // namespace isoclinic

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoclinic/errors.hpp"

namespace isoclinic {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational literal");
  std::string t = s;
  if (t[0] == '+') t = t.substr(1);
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // decimal literal, exact
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw SchemaError("bad rational literal: " + s);
    mpz_class num(ip + fp), den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && (i == 0 || t[i - 1] == '/'))))
      throw SchemaError("bad rational literal: " + s);
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw SchemaError("bad rational literal: " + s);
  if (q.get_den() == 0) throw SchemaError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

namespace detail {

inline int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

// integer polynomial, low degree first
using IntPoly = std::vector<long>;

inline const IntPoly& cyclotomic_poly_unlocked(int L, std::map<int, IntPoly>& cache) {
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  // x^L - 1 divided by Phi_d for proper divisors d
  IntPoly num(L + 1, 0);
  num[0] = -1;
  num[L] = 1;
  for (int d = 1; d < L; ++d) {
    if (L % d) continue;
    const IntPoly den = cyclotomic_poly_unlocked(d, cache);
    IntPoly q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
      long c = num[i];
      q[i - den.size() + 1] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
    }
    num = q;
  }
  return cache.emplace(L, num).first->second;
}

inline const IntPoly& cyclotomic_poly(int L) {
  static std::map<int, IntPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return cyclotomic_poly_unlocked(L, cache);
}

// Solve a small dense rational system A x = b (A square, invertible).
inline std::vector<Rational> solve_small(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw DomainError("DivisionByZero", "cyclotomic element is not invertible");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    Rational inv = 1 / A[col][col];
    for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (std::size_t j = col; j < n; ++j) A[r][j] -= f * A[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace detail

// Element of Q(zeta_L) in the power basis 1, zeta, ..., zeta^{phi(L)-1}.
class Cyc {
 public:
  Cyc() : L_(1), c_(1) {}
  Cyc(long v) : L_(1), c_{Rational(v)} {}
  Cyc(int v) : L_(1), c_{Rational(v)} {}
  Cyc(const Rational& q) : L_(1), c_{q} {}
  Cyc(int L, std::vector<Rational> coeffs) : L_(L), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != detail::euler_phi(L)) throw SchemaError("cyclotomic coefficient count must be phi(order)");
    shrink();
  }

  static Cyc zeta(int L, long k = 1) {
    if (L <= 0) throw DomainError("BadOrder", "cyclotomic order must be positive");
    k %= L;
    if (k < 0) k += L;
    if (L <= 2) return Cyc(k == 0 || L == 1 ? 1 : -1);
    // x^k reduced mod Phi_L
    std::vector<Rational> p(k + 1, 0);
    p[k] = 1;
    Cyc r;
    r.L_ = L;
    r.c_ = reduce(p, L);
    r.shrink();
    return r;
  }

  int order() const { return L_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const { return L_ == 1; }
  const Rational& rational() const {
    if (L_ != 1) throw DomainError("NotRational", "scalar is not rational");
    return c_[0];
  }

  Cyc lift(int L2) const {
    if (L2 == L_) return *this;
    if (L2 % L_) throw std::logic_error("cyclotomic lift to non-multiple order");
    if (L_ == 1) {
      Cyc r;
      r.L_ = L2;
      r.c_.assign(detail::euler_phi(L2), 0);
      r.c_[0] = c_[0];
      return r;
    }
    int s = L2 / L_;
    std::vector<Rational> p((c_.size() - 1) * s + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) p[i * s] = c_[i];
    Cyc r;
    r.L_ = L2;
    r.c_ = reduce(p, L2);
    return r;
  }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Cyc& operator+=(const Cyc& o) {
    if (L_ == 1 && o.L_ == 1) {
      c_[0] += o.c_[0];
      return *this;
    }
    int L = std::lcm(L_, o.L_);
    Cyc a = lift(L), b = o.lift(L);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    *this = std::move(a);
    shrink();
    return *this;
  }
  Cyc& operator-=(const Cyc& o) { return *this += -o; }
  Cyc& operator*=(const Cyc& o) {
    if (L_ == 1 && o.L_ == 1) {
      c_[0] *= o.c_[0];
      return *this;
    }
    if (o.L_ == 1) {
      for (auto& x : c_) x *= o.c_[0];
      shrink();
      return *this;
    }
    if (L_ == 1) {
      Rational s = c_[0];
      *this = o;
      for (auto& x : c_) x *= s;
      shrink();
      return *this;
    }
    int L = std::lcm(L_, o.L_);
    Cyc a = lift(L), b = o.lift(L);
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    }
    L_ = L;
    c_ = reduce(p, L);
    shrink();
    return *this;
  }
  Cyc inverse() const {
    if (L_ == 1) {
      if (c_[0] == 0) throw DomainError("DivisionByZero", "division by zero");
      return Cyc(Rational(1 / c_[0]));
    }
    const int n = static_cast<int>(c_.size());
    // columns: this * zeta^j
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, 0));
    for (int j = 0; j < n; ++j) {
      Cyc col = *this * Cyc::zeta(L_, j).lift(L_);
      col = col.lift(L_);
      for (int i = 0; i < n; ++i) A[i][j] = col.c_[i];
    }
    std::vector<Rational> b(n, 0);
    b[0] = 1;
    Cyc r;
    r.L_ = L_;
    r.c_ = detail::solve_small(A, b);
    r.shrink();
    return r;
  }
  Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.L_ == b.L_) return a.c_ == b.c_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Complex to_complex() const {
    Complex z = std::polar(1.0, 2 * M_PI / L_), acc = 0, p = 1;
    for (auto& x : c_) {
      acc += x.get_d() * p;
      p *= z;
    }
    return acc;
  }

  // Representation in the smallest cyclotomic field containing the value.
  Cyc canonical() const {
    if (L_ == 1) return *this;
    for (int d = 1; d < L_; ++d) {
      if (L_ % d || detail::euler_phi(d) >= static_cast<int>(c_.size())) continue;
      const int k = detail::euler_phi(d);
      // least squares is not needed: pick k independent coordinates, solve, verify
      std::vector<Cyc> basis;
      for (int j = 0; j < k; ++j) basis.push_back(Cyc::zeta(d, j).lift(L_));
      std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k));
      std::vector<int> rows;
      // choose rows greedily so the k x k block is invertible
      std::vector<std::vector<Rational>> full(c_.size(), std::vector<Rational>(k));
      for (std::size_t i = 0; i < c_.size(); ++i)
        for (int j = 0; j < k; ++j) full[i][j] = basis[j].c_[i];
      std::vector<std::vector<Rational>> echelon;
      for (std::size_t i = 0; i < c_.size() && static_cast<int>(rows.size()) < k; ++i) {
        std::vector<Rational> v = full[i];
        for (auto& e : echelon) {
          std::size_t p = 0;
          while (e[p] == 0) ++p;
          if (v[p] != 0) {
            Rational f = v[p] / e[p];
            for (int j = 0; j < k; ++j) v[j] -= f * e[j];
          }
        }
        bool nz = false;
        for (auto& x : v) nz = nz || x != 0;
        if (nz) {
          echelon.push_back(v);
          rows.push_back(static_cast<int>(i));
        }
      }
      if (static_cast<int>(rows.size()) < k) continue;
      std::vector<Rational> rhs(k);
      for (int i = 0; i < k; ++i) {
        A[i] = full[rows[i]];
        rhs[i] = c_[rows[i]];
      }
      auto x = detail::solve_small(A, rhs);
      Cyc cand;
      cand.L_ = d;
      cand.c_ = x;
      if (cand.lift(L_).c_ == c_) {
        cand.shrink();
        return cand;
      }
    }
    return *this;
  }

 private:
  static std::vector<Rational> reduce(std::vector<Rational> p, int L) {
    const auto& phi = detail::cyclotomic_poly(L);
    const int deg = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(p.size()) - 1; i >= deg; --i) {
      if (p[i] == 0) continue;
      Rational c = p[i];
      for (int j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
    }
    p.resize(deg, 0);
    return p;
  }
  void shrink() {
    if (L_ == 1) return;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return;
    Rational r = c_[0];
    L_ = 1;
    c_.assign(1, r);
  }

  int L_;
  std::vector<Rational> c_;
};

// Field traits: the exact cyclotomic backend and the floating complex backend
// share one interface.
template <class S>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double magnitude(const Rational& x) { return x == 0 ? 0.0 : 1.0; }
  static Complex to_complex(const Rational& x) { return Complex(x.get_d(), 0.0); }
  static std::string name() { return "rational"; }
};

template <>
struct Field<Cyc> {
  static constexpr bool exact = true;
  static Cyc from_rational(const Rational& q) { return Cyc(q); }
  static Cyc zeta(int L, long k = 1) { return Cyc::zeta(L, k); }
  static bool is_zero(const Cyc& x) { return x.is_zero(); }
  static double magnitude(const Cyc& x) { return x.is_zero() ? 0.0 : 1.0; }
  static Complex to_complex(const Cyc& x) { return x.to_complex(); }
  static Cyc from_complex(const Complex&) { throw std::logic_error("exact field cannot be built from a float"); }
  static std::string name() { return "exact"; }
};

template <>
struct Field<Complex> {
  static constexpr bool exact = false;
  static inline double tolerance = 1e-9;
  static Complex from_rational(const Rational& q) { return Complex(q.get_d(), 0.0); }
  static Complex zeta(int L, long k = 1) { return std::polar(1.0, 2 * M_PI * static_cast<double>(k) / L); }
  static bool is_zero(const Complex& x) { return std::abs(x) < tolerance; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static Complex from_complex(const Complex& x) { return x; }
  static std::string name() { return "float"; }
};

template <class S>
S from_int(long v) {
  return Field<S>::from_rational(Rational(v));
}

template <class S>
S from_frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return Field<S>::from_rational(r);
}

}  // namespace isoclinic

namespace isoclinic {

// "p/q" for rationals, "a + b*z12^3" style for cyclotomics
inline std::string to_string(const Cyc& x) {
  Cyc c = x.canonical();
  if (c.is_rational()) return to_string(c.rational());
  std::string s;
  for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
    const Rational& q = c.coeffs()[i];
    if (q == 0) continue;
    std::string mono = i == 0 ? "" : "z" + std::to_string(c.order()) + (i == 1 ? "" : "^" + std::to_string(i));
    std::string coef = to_string(q);
    if (!s.empty()) s += " + ";
    if (mono.empty())
      s += coef;
    else if (q == 1)
      s += mono;
    else
      s += "(" + coef + ")*" + mono;
  }
  return s.empty() ? "0" : s;
}

inline std::string to_string(const Complex& z) {
  std::ostringstream os;
  os.precision(12);
  if (std::abs(z.imag()) < 1e-14)
    os << z.real();
  else
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace isoclinic

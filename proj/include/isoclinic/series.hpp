#pragma once

#include <climits>
#include <map>

#include "isoclinic/linalg.hpp"

namespace isoclinic {

// Precision value standing for "exactly known".
constexpr int kExact = INT_MAX / 4;

inline int prec_add(int p, int d) {
  if (p >= kExact) return kExact;
  long r = static_cast<long>(p) + d;
  return r >= kExact ? kExact : static_cast<int>(r);
}

inline int prec_mul(int p, int k) {
  if (p >= kExact) return kExact;
  long r = static_cast<long>(p) * k;
  return r >= kExact ? kExact : static_cast<int>(r);
}

// Truncated Laurent series in u = t^{1/ram}: sum_{k < prec} c_k u^k.
template <class S>
struct Series {
  int ram = 1;
  std::map<int, S> terms;
  int prec = kExact;

  Series() = default;
  Series(int ram_, int prec_) : ram(ram_), prec(prec_) {}
  static Series monomial(int k, const S& c, int ram = 1, int prec = kExact) {
    Series s(ram, prec);
    s.set(k, c);
    return s;
  }

  void set(int k, const S& c) {
    if (k >= prec) return;
    if (Field<S>::is_zero(c))
      terms.erase(k);
    else
      terms[k] = c;
  }
  void add_to(int k, const S& c) {
    if (k >= prec || Field<S>::is_zero(c)) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms[k] = c;
    } else {
      it->second += c;
      if (Field<S>::is_zero(it->second)) terms.erase(it);
    }
  }
  S coeff(int k) const {
    if (k >= prec) throw DomainError("PrecisionUnderflow", "coefficient of u^" + std::to_string(k) + " is beyond the tracked precision " + std::to_string(prec));
    auto it = terms.find(k);
    return it == terms.end() ? from_int<S>(0) : it->second;
  }
  // order() = +infinity (kExact) when empty
  int order() const { return terms.empty() ? kExact : terms.begin()->first; }
  bool is_zero() const { return terms.empty(); }

  void truncate(int p) {
    prec = std::min(prec, p);
    while (!terms.empty() && terms.rbegin()->first >= prec) terms.erase(std::prev(terms.end()));
  }
};

template <class S>
void check_ram(const Series<S>& a, const Series<S>& b) {
  if (a.ram != b.ram) throw std::logic_error("series with different ramification");
}

template <class S>
Series<S> operator+(const Series<S>& a, const Series<S>& b) {
  check_ram(a, b);
  Series<S> r(a.ram, std::min(a.prec, b.prec));
  for (auto& [k, c] : a.terms) r.add_to(k, c);
  for (auto& [k, c] : b.terms) r.add_to(k, c);
  return r;
}

template <class S>
Series<S> operator-(const Series<S>& a) {
  Series<S> r(a.ram, a.prec);
  for (auto& [k, c] : a.terms) r.terms[k] = -c;
  return r;
}

template <class S>
Series<S> operator-(const Series<S>& a, const Series<S>& b) {
  return a + (-b);
}

template <class S>
Series<S> operator*(const S& s, const Series<S>& a) {
  Series<S> r(a.ram, a.prec);
  for (auto& [k, c] : a.terms) r.set(k, s * c);
  return r;
}

template <class S>
Series<S> operator*(const Series<S>& a, const Series<S>& b) {
  check_ram(a, b);
  // a zero series is known to vanish below its precision
  auto eff = [](const Series<S>& x) { return x.is_zero() ? x.prec : x.order(); };
  int p = std::min(prec_add(a.prec, eff(b)), prec_add(b.prec, eff(a)));
  if (a.prec >= kExact && b.prec >= kExact) p = kExact;
  Series<S> r(a.ram, p);
  for (auto& [i, x] : a.terms)
    for (auto& [j, y] : b.terms) r.add_to(i + j, x * y);
  return r;
}

// u d/du
template <class S>
Series<S> logarithmic_derivative(const Series<S>& a) {
  Series<S> r(a.ram, a.prec);
  for (auto& [k, c] : a.terms) r.set(k, from_int<S>(k) * c);
  return r;
}

// coefficient of u^0 in f, i.e. the residue of f du/u
template <class S>
S residue(const Series<S>& a) {
  return a.coeff(0);
}

template <class S>
Series<S> shift(const Series<S>& a, int k) {
  Series<S> r(a.ram, prec_add(a.prec, k));
  for (auto& [i, c] : a.terms) r.terms[i + k] = c;
  return r;
}

// substitute u = u'^b
template <class S>
Series<S> ramify(const Series<S>& a, int b) {
  Series<S> r(a.ram * b, prec_mul(a.prec, b));
  for (auto& [k, c] : a.terms) r.terms[k * b] = c;
  return r;
}

// inverse of ramify; requires every exponent divisible by b
template <class S>
Series<S> unramify(const Series<S>& a, int b) {
  if (a.ram % b) throw DomainError("BadRamification", "ramification not divisible");
  Series<S> r(a.ram / b, a.prec >= kExact ? kExact : (a.prec + b - 1) / b);
  for (auto& [k, c] : a.terms) {
    if (k % b) throw DomainError("BadRamification", "series is not a series in u^" + std::to_string(b));
    r.terms[k / b] = c;
  }
  return r;
}

// Power series inverse for a series with nonzero leading coefficient.
template <class S>
Series<S> inverse(const Series<S>& a) {
  if (a.is_zero()) throw DomainError("DivisionByZero", "inverse of zero series");
  int o = a.order();
  S l = a.terms.begin()->second, li = from_int<S>(1) / l;
  int rel = a.prec >= kExact ? kExact : a.prec - o;  // relative precision
  if (rel >= kExact) {
    if (a.terms.size() == 1) return Series<S>::monomial(-o, li, a.ram);
    throw DomainError("PrecisionUnderflow", "inverse of an exact non-monomial series needs a finite precision");
  }
  Series<S> r(a.ram, -o + rel);
  std::vector<S> b(rel, from_int<S>(0));
  for (int n = 0; n < rel; ++n) {
    S s = n == 0 ? from_int<S>(1) : from_int<S>(0);
    for (int k = 1; k <= n; ++k) {
      auto it = a.terms.find(o + k);
      if (it != a.terms.end()) s -= it->second * b[n - k];
    }
    b[n] = s * li;
    r.set(-o + n, b[n]);
  }
  return r;
}

// g-valued series (vector coefficients in a fixed basis of dimension dim)
template <class S>
struct LieSeries {
  int ram = 1;
  int dim = 0;
  std::map<int, Vec<S>> terms;
  int prec = kExact;

  LieSeries() = default;
  LieSeries(int dim_, int ram_, int prec_) : ram(ram_), dim(dim_), prec(prec_) {}

  void add_to(int k, const Vec<S>& v, const S& s = from_int<S>(1)) {
    if (k >= prec || Field<S>::is_zero(s) || isoclinic::is_zero(v)) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms[k] = scale(v, s);
    } else {
      axpy(it->second, s, v);
      if (isoclinic::is_zero(it->second)) terms.erase(it);
    }
  }
  void set(int k, const Vec<S>& v) {
    if (k >= prec) return;
    if (isoclinic::is_zero(v))
      terms.erase(k);
    else
      terms[k] = v;
  }
  Vec<S> coeff(int k) const {
    if (k >= prec) throw DomainError("PrecisionUnderflow", "coefficient of u^" + std::to_string(k) + " is beyond the tracked precision " + std::to_string(prec));
    auto it = terms.find(k);
    return it == terms.end() ? zero_vec<S>(dim) : it->second;
  }
  int order() const { return terms.empty() ? kExact : terms.begin()->first; }
  bool is_zero() const { return terms.empty(); }
  void truncate(int p) {
    prec = std::min(prec, p);
    while (!terms.empty() && terms.rbegin()->first >= prec) terms.erase(std::prev(terms.end()));
  }
  void normalize() {
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->first >= prec || isoclinic::is_zero(it->second))
        it = terms.erase(it);
      else
        ++it;
    }
  }
};

template <class S>
LieSeries<S> operator+(const LieSeries<S>& a, const LieSeries<S>& b) {
  if (a.ram != b.ram) throw std::logic_error("series with different ramification");
  LieSeries<S> r(a.dim, a.ram, std::min(a.prec, b.prec));
  for (auto& [k, v] : a.terms) r.add_to(k, v);
  for (auto& [k, v] : b.terms) r.add_to(k, v);
  return r;
}

template <class S>
LieSeries<S> operator-(const LieSeries<S>& a, const LieSeries<S>& b) {
  LieSeries<S> nb = b;
  for (auto& [k, v] : nb.terms) v = scale(v, from_int<S>(-1));
  return a + nb;
}

template <class S>
LieSeries<S> ramify(const LieSeries<S>& a, int b) {
  LieSeries<S> r(a.dim, a.ram * b, prec_mul(a.prec, b));
  for (auto& [k, v] : a.terms) r.terms[k * b] = v;
  return r;
}

template <class S>
LieSeries<S> unramify(const LieSeries<S>& a, int b) {
  if (a.ram % b) throw DomainError("BadRamification", "ramification not divisible");
  LieSeries<S> r(a.dim, a.ram / b, a.prec >= kExact ? kExact : (a.prec + b - 1) / b);
  for (auto& [k, v] : a.terms) {
    if (k % b) throw DomainError("BadRamification", "series is not a series in u^" + std::to_string(b));
    r.terms[k / b] = v;
  }
  return r;
}

// linear map applied termwise
template <class S>
LieSeries<S> apply(const Mat<S>& M, const LieSeries<S>& a) {
  LieSeries<S> r(M.rows, a.ram, a.prec);
  for (auto& [k, v] : a.terms) r.set(k, M * v);
  return r;
}

template <class S>
bool series_equal(const LieSeries<S>& a, const LieSeries<S>& b, int upto) {
  for (int k = std::min(a.order(), b.order()); k < upto; ++k) {
    auto x = a.coeff(k), y = b.coeff(k);
    if (!vec_equal(x, y)) return false;
    if (k > std::max(a.terms.empty() ? k : a.terms.rbegin()->first, b.terms.empty() ? k : b.terms.rbegin()->first)) break;
  }
  return true;
}

}  // namespace isoclinic

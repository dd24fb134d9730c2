#pragma once

#include <random>

#include "isoclinic/ktype.hpp"

namespace isoclinic {

enum class FormKind { DuOverU, Dt };

// h_i(t) (dt)^{d_i}, stored as series in u = t^{1/ram}
template <class S>
struct HitchinPoint {
  int ram = 1;
  std::vector<int> degrees;
  std::vector<Series<S>> h;

  // coefficient of t^{-j-1} in h_i (i is 1-based)
  S coeff(int i, int j) const { return h[i - 1].coeff(-ram * (j + 1)); }
  S coeff_t(int i, int e) const { return h[i - 1].coeff(ram * e); }
};

namespace detail {

template <class S>
using MatSeries = std::map<int, Mat<S>>;

template <class S>
MatSeries<S> matseries_mul(const MatSeries<S>& a, const MatSeries<S>& b, int prec) {
  MatSeries<S> r;
  for (auto& [i, A] : a)
    for (auto& [j, B] : b) {
      if (i + j >= prec) continue;
      auto it = r.find(i + j);
      if (it == r.end())
        r.emplace(i + j, A * B);
      else
        it->second = it->second + A * B;
    }
  return r;
}

// trace of the d-th power of the represented series, for each degree d_i
template <class S>
std::vector<Series<S>> trace_powers(const SimpleLieAlgebra<S>& g, const LieSeries<S>& A) {
  const auto& inv = section_invariants(g);
  MatSeries<S> X;
  for (auto& [k, v] : A.terms) X.emplace(k, inv.use_defining ? g.represent(v) : g.ad(v));
  const int ord = A.is_zero() ? 0 : A.order();
  std::vector<Series<S>> out;
  MatSeries<S> P = X;
  int cur = 1;
  for (int i = 0; i < g.n; ++i) {
    const int d = g.degrees[i];
    const int prec = A.prec >= kExact ? kExact : prec_add(A.prec, (d - 1) * ord);
    while (cur < d) {
      P = matseries_mul(P, X, prec);
      ++cur;
    }
    Series<S> s(A.ram, prec);
    for (auto& [k, M] : P) s.add_to(k, trace(M));
    out.push_back(s);
  }
  return out;
}

}  // namespace detail

// Kostant coordinates of a g-valued series, termwise in the section normalization.
template <class S>
std::vector<Series<S>> series_invariant_coordinates(const SimpleLieAlgebra<S>& g, const LieSeries<S>& A) {
  auto tau = detail::trace_powers(g, A);
  auto one = Series<S>::monomial(0, from_int<S>(1), A.ram, kExact);
  return section_from_traces(section_invariants(g), tau, one);
}

template <class S>
HitchinPoint<S> local_hitchin(const SimpleLieAlgebra<S>& g, const LieSeries<S>& omega, FormKind kind = FormKind::DuOverU) {
  const int m = omega.ram;
  LieSeries<S> A(omega.dim, m, prec_add(omega.prec, kind == FormKind::Dt ? m : 0));
  // X dt = m u^m X du/u
  for (auto& [k, v] : omega.terms) A.add_to(kind == FormKind::Dt ? k + m : k, v, kind == FormKind::Dt ? from_int<S>(m) : from_int<S>(1));
  auto sigma = series_invariant_coordinates(g, A);
  HitchinPoint<S> hp;
  hp.ram = m;
  hp.degrees = g.degrees;
  for (int i = 0; i < g.n; ++i) {
    const int d = g.degrees[i];
    S f = from_int<S>(1);
    for (int e = 0; e < d; ++e) f /= from_int<S>(m);
    hp.h.push_back(shift(f * sigma[i], -m * d));
  }
  return hp;
}

// t-exponent bounds -d_i - floor(d_i N / m)
template <class S>
std::vector<int> hitchin_image_lattice(const SimpleLieAlgebra<S>& g, int N, int m) {
  if (N < 1 || m < 1 || std::gcd(N, m) != 1) throw DomainError("NotCoprime", "N and m must be coprime positive integers");
  std::vector<int> out;
  for (int d : g.degrees) out.push_back(static_cast<int>(-d - floor_div(static_cast<long>(d) * N, m)));
  return out;
}

// ---- image verification ----

struct HitchinWitness {
  int degree_index = 0;  // 1-based
  int exponent = 0;      // t-exponent of the monomial
  int level = 0;         // u-level above the leading term
  std::string kind;      // "triangular" or "jacobian"
  bool ok = false;
};

struct HitchinImageReport {
  std::vector<int> lattice;
  int samples = 0;
  int contained = 0;
  std::vector<HitchinWitness> witnesses;
  bool pass = true;
};

namespace detail {

// level of the t-exponent e in degree d above the leading u-order -N d
inline int hitchin_level(int d, int e, int N, int m) { return m * (e + d) + N * d; }

template <class S>
LieSeries<S> series_from_components(const SimpleLieAlgebra<S>& g, int m, const std::map<int, Vec<S>>& comps) {
  LieSeries<S> s(g.dim, m, kExact);
  for (auto& [k, v] : comps) s.add_to(k, v);
  return s;
}

template <class S>
bool t_integral_above(const HitchinPoint<S>& hp, const std::vector<int>& bound) {
  for (std::size_t i = 0; i < hp.h.size(); ++i)
    for (auto& [k, c] : hp.h[i].terms) {
      if (mod(k, hp.ram) != 0) return false;
      if (k / hp.ram < bound[i]) return false;
    }
  return true;
}

// Solve for X in span(B) (coordinates) so that the affine map F(X) hits target; nullopt if inconsistent.
template <class S, class F>
std::optional<Vec<S>> solve_affine(int k, int rows, F&& eval, const Vec<S>& target) {
  auto base = eval(zero_vec<S>(k));
  Mat<S> J(rows, k);
  for (int a = 0; a < k; ++a) {
    auto col = sub(eval(unit_vec<S>(k, a)), base);
    for (int r = 0; r < rows; ++r) J(r, a) = col[r];
  }
  return solve(J, sub(target, base));
}

// derivative at 0 of the Lagrange basis polynomial of node a on the nodes -n..n
template <class S>
S lagrange_derivative_at_zero(int a, int n) {
  if (a == 0) {
    S r = from_int<S>(0);
    for (int c = -n; c <= n; ++c)
      if (c != 0) r += from_frac<S>(-1, c);
    return r;
  }
  S r = from_frac<S>(1, a);
  for (int c = -n; c <= n; ++c)
    if (c != a && c != 0) r *= from_frac<S>(-c, a - c);
  return r;
}

}  // namespace detail

// coordinates (i, e) whose level is q
inline std::vector<std::pair<int, int>> level_coordinates(const std::vector<int>& degrees, int N, int m, int q) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const int d = degrees[i];
    const int r = q - N * d;
    if (mod(r, m) != 0) continue;
    out.push_back({static_cast<int>(i) + 1, r / m - d});
  }
  return out;
}

// Build sum_{q} X_q u^{q-N} with X_q in t_{Y,q-N}, starting from leading Y', so that the
// coordinates at levels 1..qmax match target(i, e). Returns the components or nullopt.
template <class S, class T>
std::optional<std::map<int, Vec<S>>> triangular_preimage(const ToralDatum<S>& d, const Vec<S>& lead, int qmax, T&& target) {
  const auto& g = *d.g;
  std::map<int, Vec<S>> comps{{-d.N, lead}};
  for (int q = 1; q <= qmax; ++q) {
    auto coords = level_coordinates(g.degrees, d.N, d.m, q);
    const auto& B = d.t(q - d.N);
    if (coords.empty()) continue;
    const int k = static_cast<int>(B.size());
    auto eval = [&](const Vec<S>& c) {
      auto cc = comps;
      cc[q - d.N] = detail::combine(B, c, g.dim);
      auto hp = local_hitchin(g, detail::series_from_components(g, d.m, cc));
      Vec<S> out;
      for (auto& [i, e] : coords) out.push_back(hp.coeff_t(i, e));
      return out;
    };
    Vec<S> tgt;
    for (auto& [i, e] : coords) tgt.push_back(target(i, e));
    std::optional<Vec<S>> x = k == 0 ? std::optional<Vec<S>>() : detail::solve_affine<S>(k, static_cast<int>(coords.size()), eval, tgt);
    if (k == 0) {
      if (!vec_equal(eval(Vec<S>{}), tgt)) return std::nullopt;
      continue;
    }
    if (!x) return std::nullopt;
    comps[q - d.N] = detail::combine(B, *x, g.dim);
  }
  return comps;
}

template <class S>
Vec<S> random_in_lattice_piece(const std::vector<Vec<S>>& B, int dim, std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> dist(-range, range);
  auto x = zero_vec<S>(dim);
  for (auto& b : B) axpy(x, from_int<S>(dist(rng)), b);
  return x;
}

template <class S>
HitchinImageReport verify_hitchin_image(const ToralDatum<S>& d, int samples = 50, unsigned seed = 1, int window = 5) {
  const auto& g = *d.g;
  const int N = d.N, m = d.m;
  HitchinImageReport rep;
  rep.lattice = hitchin_image_lattice(g, N, m);
  auto L = build_lattices(d);
  std::mt19937 rng(seed);
  // containment
  for (int s = 0; s < samples; ++s) {
    LieSeries<S> w(g.dim, m, kExact);
    for (int i = -N; i <= N + m; ++i) w.add_to(i, random_in_lattice_piece(L.jplus_perp.at(d, i), g.dim, rng));
    ++rep.samples;
    if (detail::t_integral_above(local_hitchin(g, w), rep.lattice)) ++rep.contained;
  }
  if (rep.contained != rep.samples) rep.pass = false;
  // surjectivity witnesses
  auto base_hp = local_hitchin(g, detail::series_from_components(g, m, {{-N, d.Y}}));
  for (int i = 1; i <= g.n; ++i) {
    const int deg = g.degrees[i - 1];
    for (int e = rep.lattice[i - 1]; e < rep.lattice[i - 1] + window; ++e) {
      HitchinWitness w;
      w.degree_index = i;
      w.exponent = e;
      w.level = detail::hitchin_level(deg, e, N, m);
      if (w.level == 0) {
        // leading monomials: d sigma at Y on t_{Y,-N} onto the leading coordinates has full rank
        w.kind = "jacobian";
        const auto& B = d.t(-N);
        auto coords = level_coordinates(g.degrees, N, m, 0);
        auto eval = [&](const Vec<S>& x) {
          auto hp = local_hitchin(g, detail::series_from_components(g, m, {{-N, x}}));
          Vec<S> out;
          for (auto& [ii, ee] : coords) out.push_back(hp.coeff_t(ii, ee));
          return out;
        };
        // s -> sigma(Y + s b) is a polynomial of degree <= max d_i: differentiate its interpolant at s = 0
        const int maxd = g.degrees.back();
        Mat<S> J(static_cast<int>(coords.size()), static_cast<int>(B.size()));
        for (std::size_t b = 0; b < B.size(); ++b) {
          std::vector<Vec<S>> vals;
          for (int s = -maxd; s <= maxd; ++s) vals.push_back(eval(add(d.Y, scale(B[b], from_int<S>(s)))));
          for (std::size_t r = 0; r < coords.size(); ++r) {
            S der = from_int<S>(0);
            for (int a = -maxd; a <= maxd; ++a) der += detail::lagrange_derivative_at_zero<S>(a, maxd) * vals[a + maxd][r];
            J(static_cast<int>(r), static_cast<int>(b)) = der;
          }
        }
        w.ok = rank(J) == static_cast<int>(coords.size());
      } else {
        w.kind = "triangular";
        auto target = [&](int ii, int ee) {
          S v = base_hp.coeff_t(ii, ee);
          if (ii == i && ee == e) v += from_int<S>(1);
          return v;
        };
        int qmax = 0;
        for (int ii = 1; ii <= g.n; ++ii)
          qmax = std::max(qmax, detail::hitchin_level(g.degrees[ii - 1], rep.lattice[ii - 1] + window - 1, N, m));
        auto comps = triangular_preimage(d, d.Y, qmax, target);
        if (comps) {
          // the preimage lies in j^{+,perp}: torus components in degrees >= -N
          auto hp = local_hitchin(g, detail::series_from_components(g, m, *comps));
          w.ok = true;
          for (int ii = 1; ii <= g.n; ++ii)
            for (int ee = rep.lattice[ii - 1]; ee < rep.lattice[ii - 1] + window; ++ee)
              if (!Field<S>::is_zero(hp.coeff_t(ii, ee) - target(ii, ee))) w.ok = false;
        }
      }
      if (!w.ok) rep.pass = false;
      rep.witnesses.push_back(w);
    }
  }
  return rep;
}

// ---- the quotient b̄j ----

template <class S>
std::map<IJ, S> hitchin_on_bj(const ToralCharacter<S>& phi) {
  const auto& d = *phi.datum;
  const auto& g = *d.g;
  if (!is_regular_semisimple(g, phi.component(-d.N))) throw DomainError("NotRegularLeading", "leading component is not regular semisimple");
  auto ix = ell_index(g, d.N, d.m);
  auto hp = local_hitchin(g, phi.series());
  std::map<IJ, S> out;
  for (auto& ij : ix.At) out[ij] = hp.coeff(ij.first, ij.second);
  return out;
}

// ---- little Weyl group ----

template <class S>
struct TorusElement {
  int K = 1;
  std::vector<int> a;  // alpha_i(t) = zeta_K^{a_i}
  Mat<S> action;       // on t_{Y,-N}, in its basis
};

template <class S>
Vec<S> torus_act(const SimpleLieAlgebra<S>& g, const TorusElement<S>& t, const Vec<S>& x) {
  auto y = x;
  for (int k = g.n; k < g.dim; ++k) {
    long e = 0;
    for (int i = 0; i < g.n; ++i) e += static_cast<long>(g.basis_root[k][i]) * t.a[i];
    y[k] = x[k] * Field<S>::zeta(t.K, mod(e, t.K));
  }
  return y;
}

// W_0 by brute force over torus points of order dividing 2 m h that normalize t_{Y,-N}.
template <class S>
std::vector<TorusElement<S>> little_weyl_group(const ToralDatum<S>& d) {
  const auto& g = *d.g;
  if (g.n > 2) throw DomainError("RankTooLarge", "little Weyl group search is capped at rank 2");
  for (int k = g.n; k < g.dim; ++k)
    if (mod(g.height[k], d.m) == 0) throw DomainError("RankTooLarge", "g_0 is larger than the Cartan; torus search does not apply");
  const int K = 2 * d.m * g.coxeter;
  const auto& B = d.t(-d.N);
  Frame<S> fr(B, g.dim);
  std::vector<TorusElement<S>> out;
  std::vector<int> a(g.n, 0);
  while (true) {
    TorusElement<S> t{K, a, Mat<S>(static_cast<int>(B.size()), static_cast<int>(B.size()))};
    bool ok = true;
    for (std::size_t b = 0; b < B.size() && ok; ++b) {
      auto y = torus_act(g, t, B[b]);
      if (!fr.contains(y)) {
        ok = false;
        break;
      }
      auto c = fr.coords(y);
      for (std::size_t r = 0; r < B.size(); ++r) t.action(static_cast<int>(r), static_cast<int>(b)) = c[r];
    }
    if (ok) {
      bool dup = false;
      for (auto& o : out)
        if ((o.action - t.action).is_zero()) dup = true;
      if (!dup) out.push_back(t);
    }
    int i = 0;
    while (i < g.n && ++a[i] == K) a[i++] = 0;
    if (i == g.n) break;
  }
  return out;
}

template <class S>
ToralCharacter<S> torus_act(const TorusElement<S>& t, const ToralCharacter<S>& phi) {
  const auto& d = *phi.datum;
  ToralCharacter<S> r{phi.datum, {}};
  for (auto& [i, c] : phi.comp) {
    auto y = torus_act(*d.g, t, phi.component(i));
    auto co = coordinates(d.t(i), y);
    if (!co) throw std::logic_error("torus element does not preserve the graded torus");
    r.comp[i] = *co;
  }
  return r;
}

template <class S>
bool character_equal(const ToralCharacter<S>& a, const ToralCharacter<S>& b) {
  const int N = a.datum->N;
  for (int i = -N; i <= -1; ++i)
    if (!vec_equal(a.component(i), b.component(i))) return false;
  return true;
}

// ---- fibers of b̄j* -> Hit(D)_{b̄j} ----

namespace detail {

inline std::optional<Cyc> reconstruct_cyclotomic(const Complex& z) {
  const double tol = 1e-9 * std::max(1.0, std::abs(z));
  auto close = [&](const Cyc& c) { return std::abs(c.to_complex() - z) < tol; };
  if (std::abs(z.imag()) < tol) {
    Cyc c(rationalize(z.real(), 1000));
    if (close(c)) return c;
  }
  for (int L : {4, 3}) {
    // z = a + b zeta_L
    Complex w = std::polar(1.0, 2 * M_PI / L);
    double b = z.imag() / w.imag();
    double a = z.real() - b * w.real();
    Cyc c = Cyc(rationalize(a, 1000)) + Cyc(rationalize(b, 1000)) * Cyc::zeta(L);
    if (close(c)) return c;
  }
  return std::nullopt;
}

template <class S>
std::optional<S> from_complex_guess(const Complex& z) {
  if constexpr (std::is_same_v<S, Cyc>)
    return reconstruct_cyclotomic(z);
  else if constexpr (std::is_same_v<S, Complex>)
    return z;
  else
    return std::nullopt;
}

}  // namespace detail

// Leading solutions Y' in t_{Y,-N} with the prescribed leading Hitchin coordinates, by seeded Newton.
template <class S>
std::vector<Vec<S>> leading_fiber(const ToralDatum<S>& d, const std::map<IJ, S>& phi, unsigned seed = 7) {
  const auto& g = *d.g;
  auto gc = build_algebra<Complex>(g.type);
  const auto& B = d.t(-d.N);
  const int k = static_cast<int>(B.size());
  auto ix = ell_index(g, d.N, d.m);
  auto lead = ix.block(-d.N);
  if (static_cast<int>(lead.size()) != k) throw std::logic_error("leading block size differs from dim t_{Y,-N}");
  std::vector<Vec<Complex>> Bc;
  for (auto& b : B) {
    Vec<Complex> v;
    for (auto& x : b) v.push_back(Field<S>::to_complex(x));
    Bc.push_back(v);
  }
  std::vector<Complex> target;
  for (auto& ij : lead) target.push_back(Field<S>::to_complex(phi.at(ij)));
  // F(x) = sigma_i(x) m^{-d_i} - target
  auto F = [&](const std::vector<Complex>& x) {
    Vec<Complex> y(gc->dim, 0.0);
    for (int a = 0; a < k; ++a)
      for (int r = 0; r < gc->dim; ++r) y[r] += x[a] * Bc[a][r];
    auto c = invariant_coordinates(*gc, y);
    std::vector<Complex> out;
    for (std::size_t q = 0; q < lead.size(); ++q) {
      const int i = lead[q].first;
      out.push_back(c[i - 1] / std::pow(static_cast<double>(d.m), g.degrees[i - 1]) - target[q]);
    }
    return out;
  };
  double scale_guess = 0;
  for (auto& t : target) scale_guess = std::max(scale_guess, std::abs(t));
  scale_guess = std::max(1.0, std::pow(scale_guess, 1.0 / g.degrees.back()) * d.m);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<std::vector<Complex>> roots;
  for (int start = 0; start < 80; ++start) {
    std::vector<Complex> x(k);
    for (auto& v : x) v = Complex(U(rng), U(rng)) * scale_guess;
    bool conv = false;
    for (int it = 0; it < 200; ++it) {
      auto f = F(x);
      double nf = 0;
      for (auto& v : f) nf = std::max(nf, std::abs(v));
      if (nf < 1e-12 * std::max(1.0, scale_guess)) {
        conv = true;
        break;
      }
      Eigen::MatrixXcd J(k, k);
      Eigen::VectorXcd fv(k);
      for (int r = 0; r < k; ++r) fv(r) = f[r];
      for (int a = 0; a < k; ++a) {
        auto xp = x;
        const double h = 1e-7 * std::max(1.0, std::abs(x[a]));
        xp[a] += h;
        auto fp = F(xp);
        for (int r = 0; r < k; ++r) J(r, a) = (fp[r] - f[r]) / h;
      }
      Eigen::VectorXcd dx = J.fullPivLu().solve(fv);
      if (!dx.allFinite()) break;
      for (int a = 0; a < k; ++a) x[a] -= dx(a);
    }
    if (!conv) continue;
    bool dup = false;
    for (auto& r : roots) {
      double dist = 0;
      for (int a = 0; a < k; ++a) dist = std::max(dist, std::abs(r[a] - x[a]));
      if (dist < 1e-6 * scale_guess) dup = true;
    }
    if (!dup) roots.push_back(x);
  }
  std::vector<Vec<S>> out;
  for (auto& r : roots) {
    Vec<S> c;
    for (auto& z : r) {
      auto s = detail::from_complex_guess<S>(z);
      if (!s) throw DomainError("NonSplitSpectrum", "leading fiber point is not in a supported cyclotomic field");
      c.push_back(*s);
    }
    auto y = detail::combine(B, c, g.dim);
    if (!is_regular_semisimple(g, y)) continue;
    // exact verification of the leading coordinates
    auto hp = local_hitchin(g, detail::series_from_components(g, d.m, {{-d.N, y}}));
    bool ok = true;
    for (auto& ij : lead)
      if (!Field<S>::is_zero(hp.coeff(ij.first, ij.second) - phi.at(ij))) ok = false;
    if (ok) out.push_back(y);
  }
  return out;
}

template <class S>
std::vector<ToralCharacter<S>> fiber_over_phi(std::shared_ptr<const ToralDatum<S>> dp, const std::map<IJ, S>& phi, unsigned seed = 7) {
  const auto& d = *dp;
  const auto& g = *d.g;
  if (g.n > 2) throw DomainError("RankTooLarge", "fiber search is capped at rank 2");
  auto ix = ell_index(g, d.N, d.m);
  for (auto& ij : ix.At)
    if (!phi.count(ij)) throw SchemaError("missing Hitchin coordinate h_{" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "}");
  auto leads = leading_fiber(d, phi, seed);
  if (leads.empty()) throw DomainError("NotRegularLeading", "no regular semisimple leading solution");
  std::vector<ToralCharacter<S>> out;
  for (auto& y : leads) {
    auto target = [&](int i, int e) {
      // e = -j-1
      auto it = phi.find({i, -e - 1});
      return it == phi.end() ? from_int<S>(0) : it->second;
    };
    auto comps = triangular_preimage(d, y, d.N - 1, target);
    if (!comps) throw DomainError("NotRegularLeading", "lower components are not determined");
    ToralCharacter<S> c{dp, {}};
    for (int i = -d.N; i <= -1; ++i) {
      auto it = comps->find(i);
      auto v = it == comps->end() ? g.zero() : it->second;
      c.comp[i] = *coordinates(d.t(i), v);
    }
    auto h = hitchin_on_bj(c);
    for (auto& [ij, v] : phi)
      if (!Field<S>::is_zero(h.at(ij) - v)) throw std::logic_error("fiber point does not reproduce the Hitchin coordinates");
    out.push_back(c);
  }
  return out;
}

// ---- leading terms across duality ----

template <class S>
struct LeadingMatch {
  std::vector<S> coords;  // Kostant coordinates of Y
  std::shared_ptr<const SimpleLieAlgebra<S>> dual;
  Vec<S> X;               // p_{-1} + sum coords_i p_i on the dual side
  bool regular = false;
};

template <class S>
LeadingMatch<S> match_leading_terms(const SimpleLieAlgebra<S>& g, const Vec<S>& Y) {
  if (!is_regular_semisimple(g, Y)) throw DomainError("NotRegularSemisimple", "Y is not regular semisimple");
  LeadingMatch<S> r;
  r.coords = invariant_coordinates(g, Y);
  r.dual = dual_algebra(g);
  r.X = kostant_element(*r.dual, r.coords);
  r.regular = is_regular_semisimple(*r.dual, r.X);
  return r;
}

template <class S>
struct LanglandsParameter {
  std::map<IJ, S> phi;   // h_{i,j} for -N <= ell <= -1
  OperForm<S> oper;      // minimal form on the dual algebra
  OperReduction<S> reduction;
  LeadingMatch<S> leading;
};

template <class S>
LanglandsParameter<S> langlands_parameter(const ToralCharacter<S>& phit) {
  const auto& d = *phit.datum;
  const auto& g = *d.g;
  LanglandsParameter<S> out;
  out.phi = hitchin_on_bj(phit);
  out.leading = match_leading_terms(g, phit.component(-d.N));
  auto ix = ell_index(g, d.N, d.m);
  std::map<IJ, S> lead, lower;
  for (auto& [ij, v] : out.phi) (ix.ell.at(ij) == -d.N ? lead : lower)[ij] = v;
  out.oper = minimal_oper_form(out.leading.dual, d.N, d.m, lead, lower);
  out.reduction = oper_to_canonical(out.oper);
  return out;
}

// isoclinic of slope N/m with sigma(D_1) = sigma(Y) (du/u normalization)
template <class S>
bool langlands_coherent(const ToralCharacter<S>& phit, const LanglandsParameter<S>& lp) {
  const auto& d = *phit.datum;
  const auto& cf = lp.reduction.reduction.form;
  if (!is_isoclinic(cf)) return false;
  if (cf.slopes[0] != d.slope()) return false;
  if (cf.exponent(0) != -d.N || cf.ram != d.m) return false;
  auto c = invariant_coordinates(*cf.g, cf.D[0]);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!Field<S>::is_zero(c[i] - lp.leading.coords[i])) return false;
  return true;
}

}  // namespace isoclinic

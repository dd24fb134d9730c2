// One pass/fail line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace isoclinic;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

Outcome fail(const std::string& why) { return {false, why}; }

std::shared_ptr<const ToralDatum<Cyc>> datum(const std::string& name, int m, int N) {
  return std::make_shared<const ToralDatum<Cyc>>(build_toral_datum<Cyc>(build_algebra<Cyc>(name), m, N));
}

Outcome dim_match() {
  int cases = 0;
  for (auto name : {"A1", "A2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    for (int m : regular_elliptic_numbers(*g))
      for (int N = 1; N <= 3 * m; ++N) {
        if (std::gcd(N, m) != 1) continue;
        auto rep = dim_match_check(*g, m, N);
        ++cases;
        if (!rep.pass) return fail(std::string(name) + " N=" + std::to_string(N) + " m=" + std::to_string(m));
      }
  }
  return {true, std::to_string(cases) + " (algebra, m, N) cases"};
}

Outcome slope_agreement() {
  const std::map<std::string, std::vector<std::pair<int, int>>> slopes = {
      {"A1", {{1, 2}, {3, 2}, {5, 2}, {1, 1}, {2, 1}}},
      {"A2", {{1, 3}, {2, 3}, {4, 3}, {5, 3}, {1, 2}, {3, 2}, {1, 1}, {2, 1}}}};
  int n = 0;
  for (auto& [name, list] : slopes) {
    auto g = build_algebra<Cyc>(name);
    std::mt19937 rng(1000 + g->n);
    for (int s = 0; s < 100; ++s) {
      auto [N, m] = list[s % list.size()];
      auto op = random_supported_oper(g, N, m, rng);
      auto r = reduced_slope(op);
      ++n;
      if (r != oper_slope(op)) return fail(name + " seed index " + std::to_string(s) + ": " + to_string(r) + " vs " + to_string(oper_slope(op)));
    }
  }
  return {true, std::to_string(n) + " opers"};
}

const std::vector<std::tuple<std::string, int, int>>& minimal_pairs() {
  static const std::vector<std::tuple<std::string, int, int>> p = {
      {"A1", 1, 2}, {"A1", 3, 2}, {"A1", 5, 2}, {"A2", 1, 3}, {"A2", 2, 3}, {"A2", 4, 3}, {"A2", 5, 3},
      {"B2", 1, 4}, {"B2", 3, 4}, {"B2", 5, 4}, {"B2", 1, 2}, {"B2", 3, 2}, {"G2", 1, 6}, {"G2", 5, 6}, {"G2", 7, 6}};
  return p;
}

Outcome minimal_bijection() {
  int n = 0, blocks = 0;
  for (auto& [name, N, m] : minimal_pairs()) {
    auto g = build_algebra<Cyc>(name);
    std::mt19937 rng(2000 + 10 * N + m);
    for (int s = 0; s < 50; ++s) {
      auto op = random_minimal_oper(g, N, m, rng);
      auto cf = oper_to_canonical(op).reduction.form;
      auto res = canonical_to_minimal_oper(cf);
      for (auto& [l, M] : res.blocks) {
        if (!inverse(M)) return fail(name + " block " + std::to_string(l) + " singular");
        ++blocks;
      }
      if (!same_oper(res.oper, op)) return fail(name + " " + std::to_string(N) + "/" + std::to_string(m) + " instance " + std::to_string(s));
      ++n;
    }
  }
  return {true, std::to_string(n) + " round trips, " + std::to_string(blocks) + " invertible blocks"};
}

Outcome fiber_independence() {
  int n = 0;
  for (auto& [name, N, m] : std::vector<std::tuple<std::string, int, int>>{{"A1", 3, 2}, {"A1", 1, 2}, {"A2", 4, 3}, {"A2", 2, 3}}) {
    auto g = build_algebra<Cyc>(name);
    std::mt19937 rng(3000 + N);
    for (int s = 0; s < 5; ++s) {
      auto a = random_minimal_oper(g, N, m, rng);
      auto b = a;
      for (auto& [ij, c] : random_tail(*g, N, m, rng)) b.set(ij.first, ij.second, c);
      if (!fiber_independence_check(a, b)) return fail(name + " pair " + std::to_string(s));
      ++n;
    }
  }
  return {true, std::to_string(n) + " pairs"};
}

Outcome hitchin_lattice() {
  auto d = datum("A1", 2, 3);
  auto lat = hitchin_image_lattice(*d->g, 3, 2);
  if (lat != std::vector<int>{-5}) return fail("lattice exponent " + std::to_string(lat.at(0)));
  auto rep = verify_hitchin_image(*d, 50, 1, 5);
  if (rep.contained != 50) return fail(std::to_string(rep.contained) + "/50 contained");
  std::ostringstream w;
  for (auto& x : rep.witnesses) {
    if (!x.ok) return fail("no witness at t^" + std::to_string(x.exponent));
    w << " t^" << x.exponent;
  }
  if (!rep.pass) return fail("report not passing");
  return {true, "exponent -5, 50/50 contained, witnesses" + w.str()};
}

Outcome little_weyl_fibers() {
  auto d = datum("A1", 2, 3);
  auto W = little_weyl_group(*d);
  const auto oracle = regular_centralizer_order(*d->g, 2);
  if (W.size() != oracle) return fail("|W0| = " + std::to_string(W.size()) + ", oracle " + std::to_string(oracle));
  std::mt19937 rng(6000);
  for (int s = 0; s < 20; ++s) {
    auto phi = random_regular_character(d, rng);
    auto fib = fiber_over_phi(d, hitchin_on_bj(phi));
    if (fib.size() != 2) return fail("fiber of size " + std::to_string(fib.size()));
    if (!same_set(fib, orbit(phi, W))) return fail("fiber differs from the W0-orbit");
  }
  return {true, "|W0| = 2 (oracle 2), 20 fibers of size 2"};
}

Outcome langlands() {
  auto d = datum("A1", 2, 3);
  auto W = little_weyl_group(*d);
  std::mt19937 rng(7000);
  for (int s = 0; s < 20; ++s) {
    auto phi = random_regular_character(d, rng);
    if (!special_check(phi)) return fail("character not special");
    auto lp = langlands_parameter(phi);
    const auto& cf = lp.reduction.reduction.form;
    if (!is_isoclinic(cf) || cf.slopes[0] != Rational(3, 2)) return fail("not isoclinic of slope 3/2");
    if (!langlands_coherent(phi, lp)) return fail("leading class differs from the class of Y");
    for (auto& w : W) {
      auto lw = langlands_parameter(torus_act(w, phi));
      if (!same_hitchin(lw.phi, lp.phi) || !same_oper(lw.oper, lp.oper) || !irregular_part_equal(lw.reduction.reduction.form, cf))
        return fail("W0-translate changes the output");
    }
    if (!same_set(fiber_over_phi(d, lp.phi), orbit(phi, W))) return fail("fiber is not the W0-orbit");
  }
  return {true, "20 characters"};
}

Outcome airy() {
  std::ostringstream msg;
  for (auto name : {"A1", "A2"}) {
    auto g = build_algebra<Cyc>(name);
    const int h = g->coxeter;
    Rational nu(h + 1, h);
    auto gc = ks_airy(g);
    auto cf = reduce_to_canonical(restrict_to_zero(gc, h)).form;
    if (cf.k() != 1 || cf.slopes[0] != nu || !is_isoclinic(cf)) return fail(std::string(name) + " slope at 0");
    if (!is_regular_semisimple(*g, cf.D[0])) return fail(std::string(name) + " leading term not regular semisimple");
    if (!infinity_check(gc, nu).holomorphic) return fail(std::string(name) + " not holomorphic at infinity");
    auto op = canonical_to_minimal_oper(cf).oper;
    auto gc2 = globalize(op, nu);
    if (gc2.coeff.size() != gc.coeff.size()) return fail(std::string(name) + " globalize round trip");
    for (auto& [e, v] : gc.coeff)
      if (!gc2.coeff.count(e) || !vec_equal(gc2.coeff.at(e), v)) return fail(std::string(name) + " globalize round trip");
    msg << name << " slope " << to_string(nu) << " ";
  }
  return {true, msg.str() + "holomorphic at infinity"};
}

Outcome ktype_structure() {
  int cases = 0;
  for (auto name : {"A1", "A2", "B2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    for (int m : regular_elliptic_numbers(*g))
      for (int N = 1; N <= 3 * m; ++N) {
        if (std::gcd(N, m) != 1) continue;
        auto d = build_toral_datum<Cyc>(g, m, N);
        const std::string tag = std::string(name) + " N=" + std::to_string(N) + " m=" + std::to_string(m);
        for (int i = 0; i < m; ++i)
          if (static_cast<int>(d.tau[i].size()) * m != g->num_roots()) return fail(tag + " dim tau");
        if (!d.tY[0].empty()) return fail(tag + " t_{Y,0}");
        auto L = build_lattices(d);
        for (auto& [k, v] : L.checks)
          if (!v) return fail(tag + " " + k);
        if (N % 2 == 0 && 2 * L.lagrangian.size() != d.tau_at(N / 2).size()) return fail(tag + " dim m");
        ++cases;
      }
  }
  int chars = 0;
  std::mt19937 rng(9000);
  for (auto name : {"A1", "A2", "B2", "G2"}) {
    auto g = build_algebra<Cyc>(name);
    const int h = g->coxeter;
    auto d = datum(name, h, h + 1);
    for (int s = 0; s < 50; ++s) {
      auto phi = random_character(d, rng);
      for (auto& [i, v] : phi.comp)
        if (i > -(h + 1) && rng() % 2) std::fill(v.begin(), v.end(), Cyc(0));
      if (special_check(phi) != relevance_check(phi)) return fail(std::string(name) + " special vs relevant");
      ++chars;
    }
  }
  return {true, std::to_string(cases) + " data, " + std::to_string(chars) + " characters"};
}

Outcome structural() {
  for (auto& name : all_types()) {
    auto g = build_algebra<Cyc>(name);
    if (!jacobi_holds(*g)) return fail(name + " Jacobi");
    if (!killing_invariant(*g)) return fail(name + " Killing");
    if (!principal_triple(*g)) return fail(name + " principal triple");
    for (int m : regular_elliptic_numbers(*g))
      if (!grading_multiplicative(*g, m)) return fail(name + " grading");
  }
  return {true, std::to_string(all_types().size()) + " algebras"};
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, Criterion>> criteria = {
      {1, "dimension matching", 120, dim_match},
      {2, "slope agreement", 300, slope_agreement},
      {3, "minimal-form bijection", 300, minimal_bijection},
      {4, "fiber independence", 120, fiber_independence},
      {5, "Hitchin image lattice", 120, hitchin_lattice},
      {6, "little Weyl fibers", 60, little_weyl_fibers},
      {7, "Langlands coherence", 120, langlands},
      {8, "Airy checks", 60, airy},
      {9, "K-type structure", 120, ktype_structure},
      {10, "structural invariants", 60, structural},
  };
  int failures = 0;
  for (auto& [id, name, budget, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget) {
      o.pass = false;
      o.detail += " (over the time budget)";
    }
    failures += !o.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs/%.0fs", secs, budget);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " [" << t << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

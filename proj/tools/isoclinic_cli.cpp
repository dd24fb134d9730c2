// isoclinic: command-line front end, one JSON document in, one out.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "isoclinic/json_io.hpp"

using namespace isoclinic;
using io::json;

namespace {

struct Context {
  int precision = 0;
  unsigned seed = 1;
};

template <class S>
std::shared_ptr<const SimpleLieAlgebra<S>> algebra_of(const json& in) {
  if (!in.contains("algebra")) throw SchemaError("missing field \"algebra\"");
  return build_algebra<S>(in.at("algebra").get<std::string>());
}

int get_int(const json& in, const char* key) {
  if (!in.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  if (!in.at(key).is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return in.at(key).get<int>();
}

template <class S>
std::shared_ptr<const ToralDatum<S>> datum_of(const json& in) {
  auto g = algebra_of<S>(in);
  std::optional<Vec<S>> Y;
  if (in.contains("Y")) Y = io::element_from_json(*g, in.at("Y"));
  return std::make_shared<const ToralDatum<S>>(build_toral_datum<S>(g, get_int(in, "m"), get_int(in, "N"), Y));
}

template <class S>
json reduce_json(const FormalConnection<S>& c, const Context& ctx) {
  ReduceOptions opt;
  opt.precision = ctx.precision;
  auto r = reduce_to_canonical(c, opt);
  return {{"canonical", io::to_json(r.form)}, {"gauge", io::to_json(r.word)}};
}

template <class S>
using Handler = std::function<json(const json&, const Context&)>;

template <class S>
std::map<std::string, Handler<S>> handlers() {
  std::map<std::string, Handler<S>> h;

  h["algebra info"] = [](const json& in, const Context&) {
    auto g = algebra_of<S>(in);
    json kost = json::array();
    for (auto& p : g->kostant) kost.push_back(io::to_json(p));
    auto rset = regular_elliptic_numbers(*g);
    std::vector<int> rel(rset.begin(), rset.end());
    return json{{"type", g->type.name()}, {"dim", g->dim}, {"rank", g->n}, {"degrees", g->degrees}, {"coxeter", g->coxeter},
                {"labels", g->labels}, {"rho_check", io::to_json(g->rho_check)}, {"p_minus", io::to_json(g->p_minus)},
                {"kostant", kost}, {"regular_elliptic_numbers", rel}};
  };

  h["oper slope"] = [](const json& in, const Context&) {
    auto op = io::oper_from_json(algebra_of<S>(in), in);
    return json{{"slope", to_string(oper_slope(op))}};
  };

  h["oper reduce"] = [](const json& in, const Context& ctx) {
    auto op = io::oper_from_json(algebra_of<S>(in), in);
    ReduceOptions opt;
    opt.precision = ctx.precision;
    auto r = oper_to_canonical(op, opt);
    return json{{"slope", to_string(oper_slope(op))}, {"canonical", io::to_json(r.reduction.form)}, {"gauge", io::to_json(r.reduction.word)}};
  };

  h["oper minimal"] = [](const json& in, const Context&) {
    auto g = algebra_of<S>(in);
    auto op = minimal_oper_form(g, get_int(in, "N"), get_int(in, "m"), io::coefficients_from_json<S>(in.value("leading", json::array())),
                                io::coefficients_from_json<S>(in.value("lower", json::array())));
    return io::to_json(op);
  };

  h["oper invert"] = [](const json& in, const Context& ctx) {
    auto g = algebra_of<S>(in);
    FormalConnection<S> c = in.contains("irregular") ? io::canonical_connection_from_json(g, in) : io::connection_from_json(g, in);
    ReduceOptions opt;
    opt.precision = ctx.precision;
    auto cf = reduce_to_canonical(c, opt).form;
    auto res = canonical_to_minimal_oper(cf);
    json blocks = json::array();
    for (auto& [l, M] : res.blocks) {
      json rows = json::array();
      for (int r = 0; r < M.rows; ++r) rows.push_back(io::to_json(M.row(r)));
      blocks.push_back({{"ell", l}, {"matrix", rows}});
    }
    return json{{"oper", io::to_json(res.oper)}, {"blocks", blocks}};
  };

  h["conn reduce"] = [](const json& in, const Context& ctx) { return reduce_json(io::connection_from_json(algebra_of<S>(in), in), ctx); };

  h["conn refined-terms"] = [](const json& in, const Context& ctx) {
    ReduceOptions opt;
    opt.precision = ctx.precision;
    auto cf = reduce_to_canonical(io::connection_from_json(algebra_of<S>(in), in), opt).form;
    return io::to_json(*cf.refined);
  };

  h["ktype build"] = [](const json& in, const Context&) {
    auto d = datum_of<S>(in);
    auto L = build_lattices(*d);
    return json{{"datum", io::to_json(*d)}, {"lattices", io::to_json(L, *d)}};
  };

  h["ktype special"] = [](const json& in, const Context&) {
    auto g = algebra_of<S>(in);
    const int hh = g->coxeter;
    json d_in = in;
    if (!d_in.contains("m")) d_in["m"] = hh;
    if (!d_in.contains("N")) d_in["N"] = hh + 1;
    auto d = datum_of<S>(d_in);
    auto phi = io::character_from_json(d, in.value("character", json()));
    return json{{"special", special_check(phi)}, {"relevant", relevance_check(phi)}};
  };

  h["hitchin map"] = [](const json& in, const Context&) {
    auto g = algebra_of<S>(in);
    auto w = io::lie_series_from_json(*g, in);
    const std::string form = in.value("form", std::string("du/u"));
    if (form != "du/u" && form != "dt") throw SchemaError("form must be \"du/u\" or \"dt\"");
    auto hp = local_hitchin(*g, w, form == "dt" ? FormKind::Dt : FormKind::DuOverU);
    return json{{"h", io::to_json(hp)}};
  };

  h["hitchin verify-image"] = [](const json& in, const Context& ctx) {
    auto d = datum_of<S>(in);
    auto rep = verify_hitchin_image(*d, in.value("samples", 50), ctx.seed, in.value("window", 5));
    json w = json::array();
    for (auto& x : rep.witnesses)
      w.push_back({{"i", x.degree_index}, {"t_exp", x.exponent}, {"level", x.level}, {"kind", x.kind}, {"ok", x.ok}});
    return json{{"lattice", rep.lattice}, {"samples", rep.samples}, {"contained", rep.contained}, {"witnesses", w}, {"pass", rep.pass}};
  };

  h["hitchin fibers"] = [](const json& in, const Context& ctx) {
    auto d = datum_of<S>(in);
    std::map<IJ, S> phi;
    if (in.contains("phi"))
      phi = io::coefficients_from_json<S>(in.at("phi"));
    else
      phi = hitchin_on_bj(io::character_from_json(d, in.value("character", json())));
    auto fib = fiber_over_phi(d, phi, ctx.seed);
    json f = json::array();
    for (auto& c : fib) f.push_back(io::to_json(c));
    auto W = little_weyl_group(*d);
    return json{{"phi", io::coefficients_to_json(phi)}, {"fiber", f}, {"size", fib.size()}, {"little_weyl_order", W.size()}};
  };

  h["langlands param"] = [](const json& in, const Context&) {
    auto d = datum_of<S>(in);
    auto phi = io::character_from_json(d, in.value("character", json()));
    auto lp = langlands_parameter(phi);
    return json{{"phi", io::coefficients_to_json(lp.phi)},
                {"oper", io::to_json(lp.oper)},
                {"canonical", io::to_json(lp.reduction.reduction.form)},
                {"leading_coordinates", io::to_json(lp.leading.coords)},
                {"coherent", langlands_coherent(phi, lp)}};
  };

  auto airy_source = [](const json& in) {
    auto g = algebra_of<S>(in);
    if (in.contains("oper")) {
      auto op = io::oper_from_json(g, in.at("oper"));
      return std::make_pair(globalize(op, oper_slope(op)), oper_slope(op));
    }
    if (in.contains("terms")) {
      if (!in.contains("nu")) throw SchemaError("a global connection needs \"nu\"");
      return std::make_pair(io::global_from_json(g, in), io::rational_from_json(in.at("nu")));
    }
    std::map<int, S> lower;
    if (in.contains("lower"))
      for (auto& [k, v] : in.at("lower").items()) lower[std::stoi(k)] = io::scalar_from_json<S>(v);
    S vn = in.contains("v_n") ? io::scalar_from_json<S>(in.at("v_n")) : from_int<S>(1);
    Rational nu(g->coxeter + 1, g->coxeter);
    nu.canonicalize();
    return std::make_pair(airy_family(g, vn, lower), nu);
  };

  h["airy gen"] = [airy_source](const json& in, const Context&) {
    auto [gc, nu] = airy_source(in);
    const int m = static_cast<int>(nu.get_den().get_si());
    auto cf = reduce_to_canonical(restrict_to_zero(gc, m)).form;
    return json{{"connection", io::to_json(gc)}, {"nu", to_string(nu)}, {"at_zero", io::to_json(cf)}};
  };

  h["airy infinity"] = [airy_source](const json& in, const Context&) {
    auto [gc, nu] = airy_source(in);
    auto r = infinity_check(gc, nu);
    return json{{"at_infinity", io::to_json(at_infinity(gc))}, {"s_exponents", r.s_exponents}, {"regular", r.regular},
                {"holomorphic", r.holomorphic}, {"trivial_monodromy", r.trivial_monodromy}, {"certificate", r.certificate}};
  };

  h["verify dim-match"] = [](const json& in, const Context&) {
    auto g = algebra_of<S>(in);
    auto rep = dim_match_check(*g, get_int(in, "m"), get_int(in, "N"));
    json rows = json::array();
    for (auto& r : rep.rows) rows.push_back({{"ell", r.ell}, {"count", r.count}, {"dim", r.dim}, {"pass", r.count == r.dim}});
    return json{{"rows", rows}, {"pass", rep.pass}};
  };

  return h;
}

std::string read_input(const std::string& arg) {
  if (arg.empty() || arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream f(arg);
  if (!f) throw SchemaError("cannot open input file " + arg);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

template <class S>
json run(const std::string& cmd, const json& in, const Context& ctx) {
  auto h = handlers<S>();
  auto it = h.find(cmd);
  if (it == h.end()) throw SchemaError("unknown command " + cmd);
  return it->second(in, ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for formal connections, opers, toral K-types and Airy connections"};
  app.require_subcommand(1);
  const char* env_field = std::getenv("ISOCLINIC_FIELD");
  std::string field = env_field ? env_field : "exact";
  std::string input, output;
  Context ctx;

  const std::map<std::string, std::vector<std::string>> groups = {
      {"algebra", {"info"}},
      {"oper", {"slope", "reduce", "minimal", "invert"}},
      {"conn", {"reduce", "refined-terms"}},
      {"ktype", {"build", "special"}},
      {"hitchin", {"map", "verify-image", "fibers"}},
      {"langlands", {"param"}},
      {"airy", {"gen", "infinity"}},
      {"verify", {"dim-match"}},
  };
  std::string chosen;
  for (auto& [grp, leaves] : groups) {
    auto* g = app.add_subcommand(grp);
    g->require_subcommand(1);
    for (auto& leaf : leaves) {
      auto* s = g->add_subcommand(leaf);
      s->add_option("--input,-i", input, "JSON file, inline JSON, or - for stdin");
      s->add_option("--output,-o", output, "output file (default stdout)");
      s->add_option("--field", field, "exact | float")->check(CLI::IsMember({"exact", "float"}));
      s->add_option("--precision", ctx.precision, "absolute u-precision for reductions");
      s->add_option("--seed", ctx.seed, "seed for sampled verifications");
      s->callback([&chosen, grp = grp, leaf = leaf] { chosen = grp + " " + leaf; });
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  json result;
  int status = 0;
  try {
    json in = json::parse(read_input(input));
    if (!in.is_object()) throw SchemaError("input must be a JSON object");
    result = field == "float" ? run<Complex>(chosen, in, ctx) : run<Cyc>(chosen, in, ctx);
  } catch (const json::parse_error& e) {
    result = {{"error", {{"code", "SchemaError"}, {"message", e.what()}, {"byte", e.byte}}}};
    status = 2;
  } catch (const SchemaError& e) {
    result = {{"error", {{"code", "SchemaError"}, {"message", e.what()}}}};
    status = 2;
  } catch (const json::exception& e) {
    result = {{"error", {{"code", "SchemaError"}, {"message", e.what()}}}};
    status = 2;
  } catch (const DomainError& e) {
    result = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    status = 1;
  }
  const std::string text = result.dump(2) + "\n";
  if (output.empty()) {
    (status == 0 ? std::cout : std::cerr) << text;
  } else {
    std::ofstream f(output);
    f << text;
  }
  return status;
}

// renorm: exact Hopf-algebraic renormalization calculator.
//
// Subcommands load a graph catalog plus scheme files and emit reports
// in a human rendering or byte-deterministic structured JSON. All
// numbers are exact rationals; nothing is floating point unless the
// human asks for --decimal.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "renorm/gauge.hpp"
#include "renorm/io.hpp"
#include "renorm/rg_flow.hpp"

using namespace renorm;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCoverage = 3;
constexpr int kExitResource = 4;
constexpr int kExitVerdict = 5;
constexpr int kExitDomain = 6;

struct VerdictFailure : error {
  explicit VerdictFailure(const std::string& what) : error(what) {}
};

struct Options {
  std::vector<std::string> catalog_paths;
  std::string scheme_path;
  std::string scheme2_path;
  int truncation = 0; // 0: take the scheme file's declared order
  int pole_cap = 6;
  int vertex_cap = 10;
  std::string format = "human";
  bool decimal = false;
  std::vector<std::string> graph_names;
};

std::string rational_str(const Rational& q, bool decimal) {
  if (!decimal) return rational_to_string(q);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", rational_to_double(q));
  return buf;
}

std::string logpoly_str(const LogPoly& p, bool decimal) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.at(k) == 0) continue;
    if (!out.empty()) out += " + ";
    out += rational_str(p.at(k), decimal);
    if (k == 1) out += "*L";
    if (k > 1) out += "*L^" + std::to_string(k);
  }
  if (p.degree() > 0) return "(" + out + ")";
  return out;
}

std::string series_str(const LaurentSeries& s, bool decimal) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [power, coeff] : s.terms()) {
    if (!out.empty()) out += " + ";
    std::string c = logpoly_str(coeff, decimal);
    if (power == 0) {
      out += c;
    } else {
      std::string zp = power == 1 ? "z" : "z^" + std::to_string(power);
      out += (c == "1" ? zp : c + "*" + zp);
    }
  }
  return out;
}

ordered_json series_json(const LaurentSeries& s) {
  return ordered_json::parse(series_to_json(s).dump());
}

std::vector<std::string> monomial_names(const GraphCatalog& cat, const Monomial& m) {
  std::vector<std::string> names;
  for (const auto& g : m.factors()) names.push_back(cat.by_key(g.key).name);
  return names;
}

std::string monomial_str(const GraphCatalog& cat, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (const auto& name : monomial_names(cat, m)) out += (out.empty() ? "" : "*") + name;
  return out;
}

struct Context {
  Options opt;
  CatalogPtr catalog;
  ordered_json report;
  std::vector<std::string> human;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void line(std::string s) { human.push_back(std::move(s)); }

  void finish() {
    if (opt.format == "structured") {
      std::cout << report.dump(2) << "\n";
      return;
    }
    for (const auto& l : human) std::cout << l << "\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "elapsed: " << ms << " ms\n";
  }
};

Context make_context(const Options& opt, const std::string& command) {
  limits().pole_cap = opt.pole_cap;
  limits().vertex_cap = opt.vertex_cap;
  if (opt.truncation > 0) limits().truncation = opt.truncation;

  Context ctx{opt, load_catalog(opt.catalog_paths), {}, {}};
  ctx.report["command"] = command;
  ordered_json inputs;
  inputs["catalog"] = opt.catalog_paths;
  if (!opt.scheme_path.empty()) inputs["scheme"] = opt.scheme_path;
  if (!opt.scheme2_path.empty()) inputs["scheme2"] = opt.scheme2_path;
  if (opt.truncation > 0) inputs["truncation"] = opt.truncation;
  inputs["pole_cap"] = opt.pole_cap;
  inputs["vertex_cap"] = opt.vertex_cap;
  ordered_json gens = ordered_json::array();
  for (const auto& e : ctx.catalog->entries()) gens.push_back(e.name);
  inputs["generators"] = gens;
  ctx.report["inputs"] = inputs;
  return ctx;
}

SchemeFile load_scheme_for(Context& ctx, const std::string& path) {
  std::optional<int> trunc_override;
  if (ctx.opt.truncation > 0) trunc_override = ctx.opt.truncation;
  SchemeFile s = load_scheme(path, ctx.catalog, trunc_override);
  for (const auto& e : ctx.catalog->entries())
    if (!s.character.covers(Generator{e.key, e.degree}))
      throw coverage_error("scheme '" + s.name + "' does not cover graph '" + e.name + "'");
  return s;
}

std::vector<Generator> requested_generators(const Context& ctx) {
  HopfAlgebra H(ctx.catalog);
  std::vector<Generator> gens;
  if (ctx.opt.graph_names.empty()) return H.generators();
  for (const auto& name : ctx.opt.graph_names) gens.push_back(H.generator_by_name(name));
  return gens;
}

// ---------------------------------------------------------------- commands

int cmd_coproduct(const Options& opt) {
  Context ctx = make_context(opt, "coproduct");
  HopfAlgebra H(ctx.catalog);
  ordered_json results = ordered_json::array();
  for (const auto& g : requested_generators(ctx)) {
    const auto& entry = ctx.catalog->by_key(g.key);
    TensorElement d = H.coproduct(g);
    ordered_json terms = ordered_json::array();
    std::string human = "coproduct[" + entry.name + "] =";
    bool first = true;
    for (const auto& [pair, c] : d.terms()) {
      terms.push_back(ordered_json{{"coefficient", rational_to_string(c)},
                                   {"left", monomial_names(*ctx.catalog, pair.first)},
                                   {"right", monomial_names(*ctx.catalog, pair.second)}});
      human += std::string(first ? " " : " + ") + rational_str(c, opt.decimal) + "*" +
               monomial_str(*ctx.catalog, pair.first) + " (x) " +
               monomial_str(*ctx.catalog, pair.second);
      first = false;
    }
    results.push_back(ordered_json{{"graph", entry.name}, {"terms", terms}});
    ctx.line(human);
  }
  ctx.report["results"] = results;
  ctx.finish();
  return 0;
}

int cmd_antipode(const Options& opt) {
  Context ctx = make_context(opt, "antipode");
  HopfAlgebra H(ctx.catalog);
  ordered_json results = ordered_json::array();
  for (const auto& g : requested_generators(ctx)) {
    const auto& entry = ctx.catalog->by_key(g.key);
    HopfElement s = H.antipode(g);
    ordered_json terms = ordered_json::array();
    std::string human = "antipode[" + entry.name + "] =";
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
      terms.push_back(ordered_json{{"coefficient", rational_to_string(c)},
                                   {"monomial", monomial_names(*ctx.catalog, m)}});
      human += std::string(first ? " " : " + ") + rational_str(c, opt.decimal) + "*" +
               monomial_str(*ctx.catalog, m);
      first = false;
    }
    results.push_back(ordered_json{{"graph", entry.name}, {"terms", terms}});
    ctx.line(human);
  }
  ctx.report["results"] = results;
  ctx.finish();
  return 0;
}

int cmd_birkhoff(const Options& opt) {
  Context ctx = make_context(opt, "birkhoff");
  SchemeFile scheme = load_scheme_for(ctx, opt.scheme_path);
  BirkhoffFactors f = birkhoff(scheme.character);
  Character recon = convolution(inverse(f.minus), f.plus);

  bool reconstruction_exact = true, pure_poles = true, plus_holomorphic = true;
  ordered_json results = ordered_json::array();
  for (const auto& e : ctx.catalog->entries()) {
    Generator g{e.key, e.degree};
    LaurentSeries residual = recon.value(g) - scheme.character.value(g);
    reconstruction_exact = reconstruction_exact && residual.is_zero();
    pure_poles = pure_poles && f.minus.value(g).regular_part().is_zero();
    plus_holomorphic = plus_holomorphic && !f.plus.value(g).has_pole();
    results.push_back(ordered_json{{"graph", e.name},
                                   {"gamma_minus", series_json(f.minus.value(g))},
                                   {"gamma_plus", series_json(f.plus.value(g))},
                                   {"reconstruction_residual", series_json(residual)}});
    ctx.line("gamma_minus[" + e.name + "] = " + series_str(f.minus.value(g), opt.decimal));
    ctx.line("gamma_plus[" + e.name + "]  = " + series_str(f.plus.value(g), opt.decimal));
  }
  ctx.report["results"] = results;
  ctx.report["verdicts"] = ordered_json{{"reconstruction_exact", reconstruction_exact},
                                        {"minus_pure_poles", pure_poles},
                                        {"plus_holomorphic", plus_holomorphic}};
  ctx.line(std::string("reconstruction exact: ") + (reconstruction_exact ? "yes" : "NO"));
  ctx.finish();
  if (!reconstruction_exact || !pure_poles || !plus_holomorphic)
    throw VerdictFailure("birkhoff verdicts failed");
  return 0;
}

int cmd_beta(const Options& opt) {
  Context ctx = make_context(opt, "beta");
  SchemeFile scheme = load_scheme_for(ctx, opt.scheme_path);
  bool equisingular = is_equisingular(scheme.character);
  BetaValue residue = beta_residue(scheme.character);
  std::optional<BetaValue> limit;
  if (equisingular) limit = beta_limit(scheme.character);

  bool agree = true;
  ordered_json results = ordered_json::array();
  for (std::size_t i = 0; i < residue.per_generator.size(); ++i) {
    const auto& r = residue.per_generator[i];
    ordered_json row{{"graph", r.name},
                     {"degree", r.degree},
                     {"beta_residue", rational_to_string(r.value)}};
    std::string human = "beta[" + r.name + "] = " + rational_str(r.value, opt.decimal) +
                        " (residue route)";
    if (limit) {
      const auto& l = limit->per_generator[i];
      row["beta_limit"] = rational_to_string(l.value);
      agree = agree && l.value == r.value;
      human += ", " + rational_str(l.value, opt.decimal) + " (limit route)";
    } else {
      row["beta_limit"] = "n/a";
    }
    results.push_back(row);
    ctx.line(human);
  }
  ctx.report["results"] = results;
  ordered_json verdicts{{"equisingular", equisingular},
                        {"total_degree1", rational_to_string(residue.total_degree1)}};
  verdicts["routes_agree"] = limit ? ordered_json(agree) : ordered_json("n/a");
  ctx.report["verdicts"] = verdicts;
  ctx.line(std::string("equisingular: ") + (equisingular ? "yes" : "no"));
  ctx.line("beta total over degree 1: " + rational_str(residue.total_degree1, opt.decimal));
  ctx.finish();
  if (limit && !agree) throw VerdictFailure("beta routes disagree");
  return 0;
}

int cmd_connection(const Options& opt) {
  Context ctx = make_context(opt, "connection");
  SchemeFile scheme = load_scheme_for(ctx, opt.scheme_path);
  ConnectionPullback p = connection_pullback(scheme.character);
  InfinitesimalCharacter residual = flatness_residual(p);

  bool flat = true;
  ordered_json results = ordered_json::array();
  for (const auto& e : ctx.catalog->entries()) {
    Generator g{e.key, e.degree};
    flat = flat && residual.value(g).is_zero();
    results.push_back(ordered_json{{"graph", e.name},
                                   {"a", series_json(p.a.value(g))},
                                   {"b", series_json(p.b.value(g))},
                                   {"flatness_residual", series_json(residual.value(g))}});
    ctx.line("a[" + e.name + "] = " + series_str(p.a.value(g), opt.decimal));
    ctx.line("b[" + e.name + "] = " + series_str(p.b.value(g), opt.decimal));
  }
  ctx.report["results"] = results;
  ctx.report["verdicts"] = ordered_json{{"flat", flat}};
  ctx.line(std::string("flat: ") + (flat ? "yes" : "NO"));
  ctx.finish();
  if (!flat) throw VerdictFailure("derived pullback is not flat");
  return 0;
}

int cmd_check_equisingular(const Options& opt) {
  Context ctx = make_context(opt, "check-equisingular");
  SchemeFile scheme = load_scheme_for(ctx, opt.scheme_path);
  Character scaled = scale_action(scheme.character, ScaleMode::tz_grading);
  BirkhoffFactors f = birkhoff(scaled);

  bool equisingular = true;
  ordered_json results = ordered_json::array();
  for (const auto& e : ctx.catalog->entries()) {
    Generator g{e.key, e.degree};
    bool scale_free = f.minus.value(g).is_l_free();
    equisingular = equisingular && scale_free;
    results.push_back(ordered_json{{"graph", e.name},
                                   {"scaled_counterterm", series_json(f.minus.value(g))},
                                   {"scale_free", scale_free}});
    ctx.line("counterterm[" + e.name + "] = " + series_str(f.minus.value(g), opt.decimal) +
             (scale_free ? "" : "   <- depends on the scale"));
  }
  ctx.report["results"] = results;
  ctx.report["verdicts"] = ordered_json{{"equisingular", equisingular}};
  ctx.line(std::string("equisingular: ") + (equisingular ? "yes" : "no"));
  ctx.finish();
  return 0;
}

int cmd_gauge_compare(const Options& opt) {
  Context ctx = make_context(opt, "gauge-compare");
  SchemeFile a = load_scheme_for(ctx, opt.scheme_path);
  SchemeFile b = load_scheme_for(ctx, opt.scheme2_path);
  GaugeVerdict v = compare_schemes(a.character, b.character);

  BirkhoffFactors fa = birkhoff(a.character);
  BirkhoffFactors fb = birkhoff(b.character);
  ordered_json diffs = ordered_json::array();
  for (const auto& e : ctx.catalog->entries()) {
    Generator g{e.key, e.degree};
    diffs.push_back(ordered_json{
        {"graph", e.name},
        {"counterterm_difference", series_json(fa.minus.value(g) - fb.minus.value(g))}});
  }

  ordered_json verdicts{{"equivalent", v.equivalent},
                        {"counterterm_match", v.counterterm_match}};
  verdicts["beta_match"] = v.beta_match ? ordered_json(*v.beta_match) : ordered_json("n/a");
  ctx.report["results"] = ordered_json{{"counterterm_diffs", diffs}};
  if (v.witness)
    ctx.report["results"]["witness"] =
        ordered_json::parse(character_to_json(*v.witness, "witness").dump());
  ordered_json diag = ordered_json::array();
  for (const auto& d : v.diagnostics) diag.push_back(d);
  ctx.report["results"]["diagnostics"] = diag;
  ctx.report["verdicts"] = verdicts;

  ctx.line(std::string("equivalent: ") + (v.equivalent ? "yes" : "no"));
  ctx.line(std::string("counterterms match: ") + (v.counterterm_match ? "yes" : "no"));
  ctx.line(std::string("beta match: ") +
           (v.beta_match ? (*v.beta_match ? "yes" : "no") : "n/a"));
  if (v.witness) {
    for (const auto& e : ctx.catalog->entries()) {
      Generator g{e.key, e.degree};
      ctx.line("witness[" + e.name + "] = " + series_str(v.witness->value(g), opt.decimal));
    }
  }
  for (const auto& d : v.diagnostics) ctx.line("note: " + d);
  ctx.finish();
  return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool scheme, bool scheme2, bool graphs) {
  cmd->add_option("--catalog", opt.catalog_paths, "Graph document or catalog file (repeatable)")
      ->required()
      ->allow_extra_args(false);
  if (scheme) cmd->add_option("--scheme", opt.scheme_path, "Scheme file")->required();
  if (scheme2) cmd->add_option("--scheme2", opt.scheme2_path, "Second scheme file")->required();
  cmd->add_option("--truncation", opt.truncation, "Working z-truncation order")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--pole-cap", opt.pole_cap, "Maximum pole order in products")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--vertex-cap", opt.vertex_cap, "Canonical-form vertex cap")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "structured"}));
  cmd->add_flag("--decimal", opt.decimal, "Render decimal approximations in human output");
  if (graphs) cmd->add_option("graphs", opt.graph_names, "Generator names (default: all)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact BPHZ renormalization on the Hopf algebra of Feynman graphs"};
  app.require_subcommand(1);

  Options opt;
  int rc = 0;
  auto wire = [&](CLI::App* cmd, int (*fn)(const Options&)) {
    cmd->callback([&opt, &rc, fn]() { rc = fn(opt); });
  };

  auto* coproduct = app.add_subcommand("coproduct", "Print coproducts of catalog generators");
  add_common(coproduct, opt, false, false, true);
  wire(coproduct, cmd_coproduct);

  auto* antipode = app.add_subcommand("antipode", "Print antipodes of catalog generators");
  add_common(antipode, opt, false, false, true);
  wire(antipode, cmd_antipode);

  auto* birk =
      app.add_subcommand("birkhoff", "Decompose a scheme into counterterm and finite parts");
  add_common(birk, opt, true, false, false);
  wire(birk, cmd_birkhoff);

  auto* beta = app.add_subcommand("beta", "Extract beta values by both routes");
  add_common(beta, opt, true, false, false);
  wire(beta, cmd_beta);

  auto* conn = app.add_subcommand("connection", "Emit the pulled-back connection components");
  add_common(conn, opt, true, false, false);
  wire(conn, cmd_connection);

  auto* equi =
      app.add_subcommand("check-equisingular", "Test scale independence of counterterms");
  add_common(equi, opt, true, false, false);
  wire(equi, cmd_check_equisingular);

  auto* gauge = app.add_subcommand("gauge-compare", "Compare two schemes up to gauge");
  add_common(gauge, opt, true, true, false);
  wire(gauge, cmd_gauge_compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitParse;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const coverage_error& e) {
    std::cerr << "coverage error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const VerdictFailure& e) {
    std::cerr << "verdict failure: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

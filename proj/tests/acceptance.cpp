// Acceptance suite: runs every contract criterion at its stated
// tolerance (exact equality throughout) and prints one line per
// criterion. Exits nonzero if anything fails.
//
// Usage: renorm_acceptance [path-to-cli] [path-to-data-dir]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "renorm/gauge.hpp"
#include "renorm/io.hpp"
#include "renorm/rg_flow.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace renorm;

namespace {

struct Harness {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }

  void criterion(int number, const std::string& label, const std::function<void()>& body,
                 long long budget_ms = 0) {
    notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (budget_ms > 0 && ms >= budget_ms)
      notes.push_back("exceeded the " + std::to_string(budget_ms) + " ms budget");
    bool ok = notes.empty();
    failures += ok ? 0 : 1;
    std::printf("%s  criterion %2d: %s (%lld ms)\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), static_cast<long long>(ms));
    for (const auto& n : notes) std::printf("      - %s\n", n.c_str());
  }
};

std::string cli_path = "build/tools/renorm";
std::string data_dir = "data";

std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = cli_path + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

CatalogPtr bundled_catalog() {
  return load_catalog({data_dir + "/catalog_phi3.json"});
}

HopfElement random_element(std::mt19937& rng, const HopfAlgebra& H) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> nfac(0, 2);
  auto gens = H.generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  HopfElement x;
  for (int t = nterms(rng); t > 0; --t) {
    std::vector<Generator> factors;
    for (int i = nfac(rng); i > 0; --i) factors.push_back(gens[pick(rng)]);
    Rational c = gen::random_rational(rng);
    x = x + HopfElement::from_monomial(Monomial::from_factors(factors), c == 0 ? 1 : c);
  }
  return x;
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  if (argc > 2) data_dir = argv[2];
  auto suite_start = std::chrono::steady_clock::now();

  Harness h;

  // ------------------------------------------------------------------ 1
  h.criterion(1, "hopf axioms hold exactly on the bundled catalog and 50 random elements",
              [&] {
                auto cat = bundled_catalog();
                HopfAlgebra H(cat);
                std::mt19937 rng(101);
                std::vector<HopfElement> elements;
                for (const auto& g : H.generators())
                  elements.push_back(HopfElement::from_generator(g));
                for (int i = 0; i < 50; ++i) elements.push_back(random_element(rng, H));

                for (const auto& x : elements) {
                  // Coassociativity, flattened to triples.
                  std::map<std::tuple<Monomial, Monomial, Monomial>, Rational> lhs, rhs;
                  TensorElement dx = H.coproduct(x);
                  for (const auto& [pair, c] : dx.terms()) {
                    TensorElement dl = H.coproduct(HopfElement::from_monomial(pair.first));
                    for (const auto& [p2, c2] : dl.terms()) {
                      auto key = std::make_tuple(p2.first, p2.second, pair.second);
                      lhs[key] += c * c2;
                      if (lhs[key] == 0) lhs.erase(key);
                    }
                    TensorElement dr = H.coproduct(HopfElement::from_monomial(pair.second));
                    for (const auto& [p2, c2] : dr.terms()) {
                      auto key = std::make_tuple(pair.first, p2.first, p2.second);
                      rhs[key] += c * c2;
                      if (rhs[key] == 0) rhs.erase(key);
                    }
                  }
                  h.expect(lhs == rhs, "coassociativity failed");

                  // Counit laws.
                  HopfElement left, right;
                  for (const auto& [pair, c] : dx.terms()) {
                    right = right +
                            HopfElement::from_monomial(
                                pair.first, c * H.counit(HopfElement::from_monomial(pair.second)));
                    left = left +
                           HopfElement::from_monomial(
                               pair.second, c * H.counit(HopfElement::from_monomial(pair.first)));
                  }
                  h.expect(left == x && right == x, "counit law failed");

                  // Antipode law m(S (x) id) Delta = eta eps, both sides.
                  HopfElement s_id, id_s;
                  for (const auto& [pair, c] : dx.terms()) {
                    s_id = s_id + H.antipode(pair.first) *
                                      HopfElement::from_monomial(pair.second) * c;
                    id_s = id_s + HopfElement::from_monomial(pair.first) *
                                      H.antipode(pair.second) * c;
                  }
                  HopfElement eta_eps = HopfElement::unit() * H.counit(x);
                  h.expect(s_id == eta_eps && id_s == eta_eps, "antipode law failed");
                }
              },
              10000);

  // ------------------------------------------------------------------ 2
  h.criterion(2, "subgraph enumeration matches the brute-force oracle; grading is additive",
              [&] {
                auto cat = bundled_catalog();
                for (const auto& e : cat->entries()) {
                  auto got = admissible_subgraphs(e.graph);
                  auto expected = oracle::embeddings(e.graph);
                  h.expect(got.size() == expected.size(),
                           "embedding count differs on " + e.name);
                  for (std::size_t i = 0; i < got.size() && i < expected.size(); ++i)
                    h.expect(got[i].components == expected[i],
                             "embedding set differs on " + e.name);
                  for (const auto& emb : got) {
                    int sub = 0;
                    for (const auto& comp : emb.components) {
                      auto induced = induced_subgraph(e.graph, comp);
                      h.expect(is_divergent(induced), "non-divergent component on " + e.name);
                      sub += loop_number(induced);
                    }
                    h.expect(loop_number(e.graph) ==
                                 sub + loop_number(contract(e.graph, emb)),
                             "grading additivity failed on " + e.name);
                  }
                }
              });

  // ------------------------------------------------------------------ 3
  h.criterion(3, "rota-baxter identities: MS weight 1, complement, integration weight 0",
              [&] {
                std::mt19937 rng(103);
                auto ms = minimal_subtraction();
                RotaBaxterOp co{"co-ms", ms.weight,
                                [](const LaurentSeries& x) { return x.regular_part(); }};
                for (int i = 0; i < 100; ++i) {
                  auto x = gen::random_series(rng, -2, 3, 6, 2);
                  auto y = gen::random_series(rng, -2, 3, 6, 2);
                  h.expect(rb_identity_residual(ms, x, y).is_zero(),
                           "weight-1 identity failed for minimal subtraction");
                  h.expect(rb_identity_residual(co, x, y).is_zero(),
                           "weight-1 identity failed for id - P");
                }
                auto integ = integration_op();
                for (int i = 0; i < 100; ++i) {
                  auto f = gen::random_series(rng, 0, 3, 6);
                  auto g = gen::random_series(rng, 0, 3, 6);
                  h.expect(rb_identity_residual(integ, f, g).is_zero(),
                           "weight-0 identity failed for integration");
                }
              });

  // ------------------------------------------------------------------ 4
  h.criterion(4, "birkhoff reconstruction, pure poles and holomorphy on 25 random schemes",
              [&] {
                auto cat = bundled_catalog();
                std::mt19937 rng(104);
                for (int i = 0; i < 25; ++i) {
                  auto chi = gen::random_character(rng, cat, 6);
                  auto f = birkhoff(chi);
                  h.expect(convolution(inverse(f.minus), f.plus) == chi,
                           "reconstruction failed");
                  h.expect(f.plus.is_holomorphic(), "gamma_plus has a pole");
                  h.expect((f.minus.evaluate(HopfElement::unit()) - LaurentSeries::one(6))
                               .is_zero(),
                           "normalization failed");
                  for (const auto& e : cat->entries()) {
                    Generator g{e.key, e.degree};
                    h.expect(f.minus.value(g).regular_part().is_zero(),
                             "gamma_minus has nonnegative powers");
                  }
                }
              });

  // ------------------------------------------------------------------ 5
  h.criterion(5, "r_tilde and the time-ordered expansional invert each other to degree 3",
              [&] {
                auto cat3 = fixtures::catalog3();
                std::mt19937 rng(105);
                for (int i = 0; i < 25; ++i) {
                  auto alpha = gen::random_infinitesimal(rng, cat3, 6);
                  auto back = r_tilde(time_ordered_expansional(alpha));
                  for (const auto& e : cat3->entries()) {
                    Generator g{e.key, e.degree};
                    h.expect((back.value(g) - alpha.value(g)).is_zero(),
                             "r_tilde after Te is not the identity");
                  }
                }
                for (int i = 0; i < 25; ++i) {
                  auto chi = gen::random_character(rng, cat3, 6);
                  h.expect(time_ordered_expansional(r_tilde(chi)) == chi,
                           "Te after r_tilde is not the identity");
                }
              });

  // ------------------------------------------------------------------ 6
  h.criterion(6, "both beta routes agree on 25 random equisingular families", [&] {
    auto cat = bundled_catalog();
    HopfAlgebra H(cat);
    std::mt19937 rng(106);
    for (int i = 0; i < 25; ++i) {
      auto chi = gen::random_equisingular(rng, cat, 6);
      for (const auto& e : cat->entries()) {
        Generator g{e.key, e.degree};
        h.expect(chi.value(g).regular_part().is_zero() &&
                     chi.value(g).pole_order() <= e.degree,
                 "family is not a pure-pole pole-bounded scheme");
      }
      auto limit = beta_limit(chi);
      auto residue = beta_residue(chi);
      for (std::size_t k = 0; k < limit.per_generator.size(); ++k)
        h.expect(limit.per_generator[k].value == residue.per_generator[k].value,
                 "routes disagree on " + limit.per_generator[k].name);
      h.expect(beta_total(limit) == beta_total(residue), "totals disagree");
      // Primitive generators: beta = loop number * residue of the value.
      for (const auto& e : cat->entries()) {
        Generator g{e.key, e.degree};
        if (H.reduced_coproduct(g).empty())
          h.expect(limit.at(e.name) ==
                       Rational(e.degree) * chi.value(g).residue().constant_term(),
                   "primitive beta is not the loop-weighted residue");
      }
    }
  });

  // ------------------------------------------------------------------ 7
  h.criterion(7, "flatness residual vanishes for 25 random pullbacks to degree 3", [&] {
    auto cat3 = fixtures::catalog3();
    std::mt19937 rng(107);
    for (int i = 0; i < 25; ++i) {
      auto chi = gen::random_character(rng, cat3, 6);
      h.expect(flatness_residual(connection_pullback(chi)).is_zero(),
               "flatness residual is nonzero");
    }
  });

  // ------------------------------------------------------------------ 8
  h.criterion(8, "gauge transforms preserve counterterms and beta; witnesses are recovered",
              [&] {
                auto cat = bundled_catalog();
                std::mt19937 rng(108);
                for (int i = 0; i < 25; ++i) {
                  auto chi = gen::random_equisingular(rng, cat, 6);
                  auto psi = gen::random_holomorphic(rng, cat, 6);
                  auto moved = gauge_transform(chi, psi);

                  h.expect(counterterms_equal(chi, moved), "counterterms moved");

                  auto before = beta_residue(chi);
                  auto after = beta_residue(moved);
                  for (std::size_t k = 0; k < before.per_generator.size(); ++k)
                    if (before.per_generator[k].degree == 1)
                      h.expect(before.per_generator[k].value == after.per_generator[k].value,
                               "degree-1 beta moved");
                  h.expect(before.total_degree1 == after.total_degree1, "beta total moved");

                  auto verdict = compare_schemes(chi, moved);
                  h.expect(verdict.equivalent && verdict.witness.has_value(),
                           "equivalence not detected");
                  if (verdict.witness) {
                    h.expect(verdict.witness->is_holomorphic(), "witness is not holomorphic");
                    h.expect(*verdict.witness == psi, "witness differs from the gauge used");
                  }

                  auto lhs = pullback_gauge_action(connection_pullback(chi), psi);
                  auto rhs = connection_pullback(moved);
                  for (const auto& e : cat->entries()) {
                    Generator g{e.key, e.degree};
                    h.expect((lhs.a.value(g) - rhs.a.value(g)).is_zero() &&
                                 (lhs.b.value(g) - rhs.b.value(g)).is_zero(),
                             "gauge action does not commute with the pullback");
                  }
                }

                // The bundled pair demonstrates the same relation.
                auto dimreg = load_scheme(data_dir + "/scheme_dimreg_toy.json", cat);
                auto twist = load_scheme(data_dir + "/scheme_holo_twist.json", cat);
                auto verdict = compare_schemes(dimreg.character, twist.character);
                h.expect(verdict.equivalent, "bundled schemes are not gauge equivalent");
                h.expect(verdict.beta_match.has_value() && *verdict.beta_match,
                         "bundled schemes have different beta");
              });

  // ------------------------------------------------------------------ 9
  h.criterion(9, "equisingularity verdicts: toys pass, the scale-leak family fails", [&] {
    auto cat = bundled_catalog();
    std::mt19937 rng(109);
    for (int i = 0; i < 25; ++i)
      h.expect(is_equisingular(gen::random_equisingular(rng, cat, 6)),
               "generated toy family rejected");
    auto dimreg = load_scheme(data_dir + "/scheme_dimreg_toy.json", cat);
    h.expect(is_equisingular(dimreg.character), "bundled toy scheme rejected");
    auto leak = load_scheme(data_dir + "/scheme_scale_leak.json", cat);
    h.expect(!is_equisingular(leak.character), "scale-leak family accepted");
  });

  // ----------------------------------------------------------------- 10
  h.criterion(10, "every CLI subcommand succeeds on bundled data with deterministic output",
              [&] {
                const std::string cat_arg = "--catalog " + data_dir + "/catalog_phi3.json";
                const std::string scheme_arg = "--scheme " + data_dir + "/scheme_dimreg_toy.json";
                std::vector<std::string> commands = {
                    "coproduct " + cat_arg,
                    "antipode " + cat_arg,
                    "birkhoff " + cat_arg + " " + scheme_arg,
                    "beta " + cat_arg + " " + scheme_arg,
                    "connection " + cat_arg + " " + scheme_arg,
                    "check-equisingular " + cat_arg + " " + scheme_arg,
                    "check-equisingular " + cat_arg + " --scheme " + data_dir +
                        "/scheme_scale_leak.json",
                    "gauge-compare " + cat_arg + " " + scheme_arg + " --scheme2 " + data_dir +
                        "/scheme_holo_twist.json",
                    "beta " + cat_arg + " --scheme " + data_dir + "/scheme_scale_leak.json",
                    "gauge-compare " + cat_arg + " " + scheme_arg + " --scheme2 " + data_dir +
                        "/scheme_scale_leak.json",
                };
                for (const auto& c : commands) {
                  int code1 = 0, code2 = 0;
                  std::string out1 = run_cli(c + " --format structured", code1);
                  std::string out2 = run_cli(c + " --format structured", code2);
                  h.expect(code1 == 0, "exit code " + std::to_string(code1) + " from: " + c);
                  h.expect(out1 == out2, "output not byte-deterministic for: " + c);
                  h.expect(!json::parse(out1, nullptr, false).is_discarded(),
                           "structured output is not valid JSON for: " + c);
                  int human_code = 0;
                  run_cli(c, human_code);
                  h.expect(human_code == 0, "human format failed for: " + c);
                }

                // Distinct exit codes per failure class.
                int code = 0;
                run_cli("birkhoff " + cat_arg + " --scheme /nonexistent.json", code);
                h.expect(code == 2, "missing scheme file should exit 2, got " +
                                        std::to_string(code));
                run_cli("coproduct " + cat_arg + " nosuchgraph", code);
                h.expect(code == 3, "unknown graph name should exit 3, got " +
                                        std::to_string(code));
                run_cli("birkhoff " + cat_arg + " " + scheme_arg + " --pole-cap 1", code);
                h.expect(code == 4, "pole cap should exit 4, got " + std::to_string(code));
              });

  auto total_s = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::steady_clock::now() - suite_start)
                     .count();
  std::printf("%d of 10 criteria passed in %lld s\n", 10 - h.failures,
              static_cast<long long>(total_s));
  if (total_s >= 300) {
    std::printf("FAIL  suite exceeded the five-minute budget\n");
    return 1;
  }
  return h.failures == 0 ? 0 : 1;
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renorm/rg_flow.hpp"

namespace renorm {

/// Right convolution by a holomorphic character. Only the holomorphic
/// group acts by gauge; anything with a pole changes the singularity
/// type and is rejected.
inline Character gauge_transform(const Character& chi, const Character& psi) {
  if (!psi.is_holomorphic())
    throw domain_error("gauge characters must be holomorphic in z");
  return convolution(chi, psi);
}

/// Both schemes decompose; true iff the counterterm parts agree exactly
/// on every generator.
inline bool counterterms_equal(const Character& a, const Character& b) {
  BirkhoffFactors fa = birkhoff(a);
  BirkhoffFactors fb = birkhoff(b);
  for (const auto& e : a.catalog().entries()) {
    Generator g{e.key, e.degree};
    if (!(fa.minus.value(g) - fb.minus.value(g)).is_zero()) return false;
  }
  return true;
}

struct GaugeVerdict {
  bool equivalent = false;
  bool counterterm_match = false;
  /// Degree-1 beta agreement; empty when either scheme fails the
  /// equisingularity check, where no beta function is defined.
  std::optional<bool> beta_match;
  std::optional<Character> witness;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline void require_same_catalog(const Character& a, const Character& b) {
  const auto& ea = a.catalog().entries();
  const auto& eb = b.catalog().entries();
  bool same = ea.size() == eb.size();
  for (std::size_t i = 0; same && i < ea.size(); ++i) same = ea[i].key == eb[i].key;
  if (!same) throw domain_error("schemes are defined over different catalogs");
}

} // namespace detail

/// Scheme comparison: counterterm equality, witness extraction and
/// certification, and beta comparison on the degree-1 stratum (the beta
/// function of the coupling) when both families are equisingular.
inline GaugeVerdict compare_schemes(const Character& a, const Character& b) {
  detail::require_same_catalog(a, b);
  GaugeVerdict v;
  v.counterterm_match = counterterms_equal(a, b);

  bool eq_a = is_equisingular(a);
  bool eq_b = is_equisingular(b);
  if (eq_a && eq_b) {
    BetaValue ba = beta_residue(a);
    BetaValue bb = beta_residue(b);
    bool match = true;
    for (std::size_t i = 0; i < ba.per_generator.size(); ++i)
      if (ba.per_generator[i].degree == 1 &&
          ba.per_generator[i].value != bb.per_generator[i].value)
        match = false;
    v.beta_match = match;
  } else {
    v.diagnostics.push_back("beta comparison skipped: " +
                            std::string(eq_a ? "second" : "first") +
                            " scheme is not equisingular");
  }

  if (!v.counterterm_match) {
    v.diagnostics.push_back("counterterm parts differ; the schemes are not gauge equivalent");
    return v;
  }

  Character psi = convolution(inverse(a), b);
  if (!psi.is_holomorphic()) {
    v.diagnostics.push_back("connecting character has a pole; verdict downgraded");
    return v;
  }
  if (gauge_transform(a, psi) != b) {
    v.diagnostics.push_back("witness certification failed");
    return v;
  }
  v.equivalent = true;
  v.witness = std::move(psi);
  return v;
}

/// The action of a holomorphic character on a pullback:
/// D(psi) + psi^(*-1) * (a, b) * psi, componentwise. Commutes with
/// taking the pullback of the gauge-transformed section.
inline ConnectionPullback pullback_gauge_action(const ConnectionPullback& p,
                                                const Character& psi) {
  if (!psi.is_holomorphic())
    throw domain_error("gauge characters must be holomorphic in z");
  HopfAlgebra H(psi.catalog_ptr());
  Character psi_inv = inverse(psi);
  auto f_inv = psi_inv.as_fn();
  auto f_psi = psi.as_fn();

  auto sandwich = [&](const InfinitesimalCharacter& c, int trunc) {
    auto f_c = c.as_fn();
    MonomialFn right = [&](const Monomial& m) {
      return convolve_eval(H, f_c, f_psi, HopfElement::from_monomial(m), trunc);
    };
    InfinitesimalCharacter out(psi.catalog_ptr(), trunc);
    for (const auto& e : psi.catalog().entries()) {
      Generator g{e.key, e.degree};
      out.set_value(g,
                    convolve_eval(H, f_inv, right, HopfElement::from_generator(g), trunc));
    }
    return out;
  };

  MonomialFn f_dz = [&psi](const Monomial& m) { return psi.evaluate(m).dz(); };
  InfinitesimalCharacter dz_term(psi.catalog_ptr(), p.a.truncation());
  for (const auto& e : psi.catalog().entries()) {
    Generator g{e.key, e.degree};
    dz_term.set_value(g, convolve_eval(H, f_inv, f_dz, HopfElement::from_generator(g),
                                       p.a.truncation()));
  }

  InfinitesimalCharacter a_out = sandwich(p.a, p.a.truncation()) + dz_term;
  InfinitesimalCharacter b_out = sandwich(p.b, p.b.truncation()) + r_tilde(psi);
  return {std::move(a_out), std::move(b_out), p.evaluated_at_t1};
}

} // namespace renorm

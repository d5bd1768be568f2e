#pragma once

#include <string>
#include <vector>

#include "renorm/character.hpp"

namespace renorm {

/// The two materializations of the renormalization-group action on a
/// character: t_grading multiplies a degree-n value by exp(n*L),
/// tz_grading by exp(n*z*L). Setting L = 0 recovers the input.
enum class ScaleMode { t_grading, tz_grading };

inline Character scale_action(const Character& chi, ScaleMode mode) {
  Character out = Character::counit_character(chi.catalog_ptr(), chi.truncation());
  const int z_weight = mode == ScaleMode::tz_grading ? 1 : 0;
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    out.set_value(g, mul_exp_l(chi.value(g), Rational(e.degree), z_weight));
  }
  return out;
}

/// The bijection from characters to infinitesimal characters:
/// chi^(*-1) * (chi after Y). Its inverse is the time-ordered
/// expansional below.
inline InfinitesimalCharacter r_tilde(const Character& chi) {
  HopfAlgebra H(chi.catalog_ptr());
  Character inv = inverse(chi);
  auto f_inv = inv.as_fn();
  MonomialFn f_y = [&chi](const Monomial& m) {
    return chi.evaluate(m) * Rational(m.degree());
  };
  InfinitesimalCharacter out(chi.catalog_ptr(), chi.truncation());
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    out.set_value(g,
                  convolve_eval(H, f_inv, f_y, HopfElement::from_generator(g), chi.truncation()));
  }
  return out;
}

/// Rebuilds the unique character chi with r_tilde(chi) = alpha, degree
/// by degree: n * chi(x) = alpha(x) + sum over proper subgraph terms of
/// chi(subgraph) * alpha(contraction). The round trip with r_tilde is
/// the correctness contract, and it is exact at any truncation.
inline Character time_ordered_expansional(const InfinitesimalCharacter& alpha) {
  HopfAlgebra H(alpha.catalog_ptr());
  Character out = Character::counit_character(alpha.catalog_ptr(), alpha.truncation());
  for (const auto& e : alpha.catalog().entries()) {
    Generator g{e.key, e.degree};
    LaurentSeries acc = alpha.value(g);
    for (const auto& [left, right] : H.reduced_coproduct(g))
      acc = acc + out.evaluate(left) * alpha.evaluate(right);
    out.set_value(g, acc * Rational(1, e.degree));
  }
  return out;
}

/// The two components of a pulled-back connection along the section a
/// character defines: a is the z-component chi^(*-1) * (d_z chi), b is
/// r_tilde(chi). Both are stated at t = 1; the t^Y prefactor is carried
/// implicitly by the grading, so the scale derivative acts as Y.
struct ConnectionPullback {
  InfinitesimalCharacter a;
  InfinitesimalCharacter b;
  bool evaluated_at_t1 = true;
};

inline ConnectionPullback connection_pullback(const Character& chi) {
  if (chi.truncation() < 1)
    throw resource_error("connection pullback needs z-truncation order >= 1");
  HopfAlgebra H(chi.catalog_ptr());
  Character inv = inverse(chi);
  auto f_inv = inv.as_fn();
  MonomialFn f_dz = [&chi](const Monomial& m) { return chi.evaluate(m).dz(); };
  InfinitesimalCharacter a(chi.catalog_ptr(), chi.truncation() - 1);
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    a.set_value(g, convolve_eval(H, f_inv, f_dz, HopfElement::from_generator(g),
                                 a.truncation()));
  }
  return {std::move(a), r_tilde(chi), true};
}

/// [a, b] - (Y a - d_z b). Identically zero for every pullback obtained
/// from connection_pullback; the connection is flat.
inline InfinitesimalCharacter flatness_residual(const ConnectionPullback& p) {
  if (p.b.truncation() < 1)
    throw resource_error("flatness residual needs z-truncation order >= 1");
  InfinitesimalCharacter bracket = lie_bracket(p.a, p.b);
  int trunc = std::min(bracket.truncation(), p.b.truncation() - 1);
  InfinitesimalCharacter out(p.a.catalog_ptr(), trunc);
  for (const auto& e : p.a.catalog().entries()) {
    Generator g{e.key, e.degree};
    LaurentSeries scale_term = p.a.value(g) * Rational(e.degree);
    out.set_value(g, bracket.value(g) - scale_term + p.b.value(g).dz());
  }
  return out;
}

/// Per-generator beta contributions. The physics beta function of the
/// coupling is the sum over the degree-1 stratum.
struct BetaValue {
  struct Entry {
    std::string name;
    std::string key;
    int degree;
    Rational value;
  };
  std::vector<Entry> per_generator; // catalog order
  Rational total_degree1{0};

  const Rational& at(const std::string& name) const {
    for (const auto& e : per_generator)
      if (e.name == name) return e.value;
    throw coverage_error("no beta entry for graph '" + name + "'");
  }
};

/// Sum over the degree-1 generators.
inline Rational beta_total(const BetaValue& b) {
  Rational t{0};
  for (const auto& e : b.per_generator)
    if (e.degree == 1) t += e.value;
  return t;
}

/// Equisingularity of the family t^{zY} chi: decompose it over Q[L] and
/// ask whether every counterterm value is L-free.
inline bool is_equisingular(const Character& chi) {
  Character scaled = scale_action(chi, ScaleMode::tz_grading);
  BirkhoffFactors f = birkhoff(scaled, minimal_subtraction());
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    if (!f.minus.value(g).is_l_free()) return false;
  }
  return true;
}

/// Residue route: the z^-1 coefficient of r_tilde(chi) at L = 0,
/// per generator. Defined for any covered character.
inline BetaValue beta_residue(const Character& chi) {
  InfinitesimalCharacter b = r_tilde(chi);
  BetaValue out;
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    out.per_generator.push_back({e.name, e.key, e.degree,
                                 b.value(g).residue().constant_term()});
  }
  out.total_degree1 = beta_total(out);
  return out;
}

/// Limit route: the scale derivative at t = 1 of the z -> 0 limit of
/// chi^(*-1) * t^{zY} chi. Only defined for equisingular families; a
/// residual pole means the family is not renormalizable this way.
inline BetaValue beta_limit(const Character& chi) {
  if (!is_equisingular(chi))
    throw domain_error("beta limit is only defined for an equisingular family");
  HopfAlgebra H(chi.catalog_ptr());
  Character inv = inverse(chi);
  Character scaled = scale_action(chi, ScaleMode::tz_grading);
  auto f_inv = inv.as_fn();
  auto f_scaled = scaled.as_fn();
  BetaValue out;
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    LaurentSeries c = convolve_eval(H, f_inv, f_scaled, HopfElement::from_generator(g),
                                    chi.truncation());
    if (!c.pole_part().is_zero())
      throw domain_error("scale comparison of '" + e.name +
                         "' keeps a pole; the family is not renormalizable");
    out.per_generator.push_back({e.name, e.key, e.degree,
                                 c.coeff(0).derivative().constant_term()});
  }
  out.total_degree1 = beta_total(out);
  return out;
}

} // namespace renorm

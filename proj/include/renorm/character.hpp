#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "renorm/hopf.hpp"
#include "renorm/laurent.hpp"
#include "renorm/rota_baxter.hpp"

namespace renorm {

using MonomialFn = std::function<LaurentSeries(const Monomial&)>;

/// A series-valued character of the Hopf algebra, stored by its values
/// on generators and extended multiplicatively; the homomorphism
/// property holds by construction. The default-constructed value map is
/// the counit (1 on the unit, 0 on every generator).
class Character {
public:
  /// A partial character: values must be supplied per generator, and
  /// using an unset one is a coverage error. Scheme files load this way.
  Character(CatalogPtr catalog, int truncation)
      : cat_(std::move(catalog)), trunc_(truncation) {
    if (!cat_) throw domain_error("character needs a catalog");
  }

  /// The counit: 1 on the unit, identically zero on generators. Total,
  /// so it evaluates everywhere; library-built characters start here.
  static Character counit_character(CatalogPtr catalog, int truncation) {
    Character c(std::move(catalog), truncation);
    c.total_ = true;
    return c;
  }

  const CatalogPtr& catalog_ptr() const { return cat_; }
  const GraphCatalog& catalog() const { return *cat_; }
  int truncation() const { return trunc_; }

  bool covers(const Generator& g) const { return total_ || values_.count(g.key) != 0; }

  bool covers(const Monomial& m) const {
    for (const auto& g : m.factors())
      if (!covers(g)) return false;
    return true;
  }

  LaurentSeries value(const Generator& g) const {
    auto it = values_.find(g.key);
    if (it != values_.end()) return it->second;
    if (total_) return LaurentSeries::zero(trunc_);
    throw coverage_error("character does not cover graph '" + cat_->by_key(g.key).name + "'");
  }

  Character& set_value(const Generator& g, LaurentSeries v) {
    if (!cat_->contains_key(g.key))
      throw coverage_error("character value for a graph outside the catalog");
    values_[g.key] = std::move(v);
    return *this;
  }

  Character with_value(const Generator& g, LaurentSeries v) const {
    Character out = *this;
    out.set_value(g, std::move(v));
    return out;
  }

  LaurentSeries evaluate(const Monomial& m) const {
    LaurentSeries out = LaurentSeries::one(trunc_);
    for (const auto& g : m.factors()) out = out * value(g);
    return out;
  }

  LaurentSeries evaluate(const HopfElement& x) const {
    LaurentSeries out = LaurentSeries::zero(trunc_);
    for (const auto& [m, c] : x.terms()) out = out + evaluate(m) * c;
    return out;
  }

  MonomialFn as_fn() const {
    return [self = *this](const Monomial& m) { return self.evaluate(m); };
  }

  /// True when every generator value is pole-free.
  bool is_holomorphic() const {
    for (const auto& [k, v] : values_)
      if (v.has_pole()) return false;
    return true;
  }

  /// True when no generator value depends on L.
  bool is_l_free() const {
    for (const auto& [k, v] : values_)
      if (!v.is_l_free()) return false;
    return true;
  }

  const std::map<std::string, LaurentSeries>& values() const { return values_; }

  bool operator==(const Character& o) const {
    for (const auto& e : cat_->entries()) {
      Generator g{e.key, e.degree};
      if (!(value(g) - o.value(g)).is_zero()) return false;
    }
    return true;
  }
  bool operator!=(const Character& o) const { return !(*this == o); }

private:
  CatalogPtr cat_;
  std::map<std::string, LaurentSeries> values_;
  int trunc_;
  bool total_ = false;
};

/// A derivation-like functional: zero on the unit and on any product of
/// two or more generators, stored by generator values.
class InfinitesimalCharacter {
public:
  InfinitesimalCharacter(CatalogPtr catalog, int truncation)
      : cat_(std::move(catalog)), trunc_(truncation) {
    if (!cat_) throw domain_error("infinitesimal character needs a catalog");
  }

  /// The Kronecker delta of a single generator.
  static InfinitesimalCharacter delta(CatalogPtr catalog, const Generator& g,
                                      int truncation) {
    InfinitesimalCharacter a(std::move(catalog), truncation);
    a.set_value(g, LaurentSeries::one(truncation));
    return a;
  }

  const CatalogPtr& catalog_ptr() const { return cat_; }
  const GraphCatalog& catalog() const { return *cat_; }
  int truncation() const { return trunc_; }

  LaurentSeries value(const Generator& g) const {
    auto it = values_.find(g.key);
    if (it != values_.end()) return it->second;
    return LaurentSeries::zero(trunc_);
  }

  InfinitesimalCharacter& set_value(const Generator& g, LaurentSeries v) {
    if (!cat_->contains_key(g.key))
      throw coverage_error("value for a graph outside the catalog");
    values_[g.key] = std::move(v);
    return *this;
  }

  LaurentSeries evaluate(const Monomial& m) const {
    if (m.factors().size() != 1) return LaurentSeries::zero(trunc_);
    return value(m.factors().front());
  }

  LaurentSeries evaluate(const HopfElement& x) const {
    LaurentSeries out = LaurentSeries::zero(trunc_);
    for (const auto& [m, c] : x.terms()) out = out + evaluate(m) * c;
    return out;
  }

  MonomialFn as_fn() const {
    return [self = *this](const Monomial& m) { return self.evaluate(m); };
  }

  bool is_zero() const {
    for (const auto& [k, v] : values_)
      if (!v.is_zero()) return false;
    return true;
  }

  InfinitesimalCharacter operator+(const InfinitesimalCharacter& o) const {
    InfinitesimalCharacter out(cat_, std::min(trunc_, o.trunc_));
    for (const auto& e : cat_->entries()) {
      Generator g{e.key, e.degree};
      out.set_value(g, value(g) + o.value(g));
    }
    return out;
  }

  InfinitesimalCharacter operator-(const InfinitesimalCharacter& o) const {
    InfinitesimalCharacter out(cat_, std::min(trunc_, o.trunc_));
    for (const auto& e : cat_->entries()) {
      Generator g{e.key, e.degree};
      out.set_value(g, value(g) - o.value(g));
    }
    return out;
  }

  const std::map<std::string, LaurentSeries>& values() const { return values_; }

private:
  CatalogPtr cat_;
  std::map<std::string, LaurentSeries> values_;
  int trunc_;
};

/// m(f (x) g)(coproduct x): the convolution pairing of two linear maps,
/// each given by its action on monomials.
inline LaurentSeries convolve_eval(const HopfAlgebra& H, const MonomialFn& f,
                                   const MonomialFn& g, const HopfElement& x,
                                   int truncation) {
  LaurentSeries out = LaurentSeries::zero(truncation);
  TensorElement dx = H.coproduct(x);
  for (const auto& [pair, c] : dx.terms())
    out = out + f(pair.first) * g(pair.second) * c;
  return out;
}

/// Convolution product of two characters, computed on generators.
inline Character convolution(const Character& a, const Character& b) {
  HopfAlgebra H(a.catalog_ptr());
  int trunc = std::min(a.truncation(), b.truncation());
  Character out = Character::counit_character(a.catalog_ptr(), trunc);
  auto fa = a.as_fn();
  auto fb = b.as_fn();
  for (const auto& e : a.catalog().entries()) {
    Generator g{e.key, e.degree};
    out.set_value(g, convolve_eval(H, fa, fb, HopfElement::from_generator(g), trunc));
  }
  return out;
}

/// Convolution inverse via the antipode: inverse(c) = c after S.
inline Character inverse(const Character& c) {
  HopfAlgebra H(c.catalog_ptr());
  Character out = Character::counit_character(c.catalog_ptr(), c.truncation());
  for (const auto& e : c.catalog().entries()) {
    Generator g{e.key, e.degree};
    out.set_value(g, c.evaluate(H.antipode(g)));
  }
  return out;
}

/// The prepared value of one generator: the character's own value plus
/// all lower-order counterterm subtractions. `counterterms` must cover
/// every generator of lower degree that appears in a subgraph.
inline LaurentSeries bogoliubov_prepare(const Character& chi, const Character& counterterms,
                                        const Generator& g) {
  HopfAlgebra H(chi.catalog_ptr());
  LaurentSeries prepared = chi.value(g);
  for (const auto& [left, right] : H.reduced_coproduct(g)) {
    for (const auto& f : left.factors())
      if (!counterterms.covers(f))
        throw coverage_error("counterterm for graph '" +
                             chi.catalog().by_key(f.key).name +
                             "' is needed before degree " + std::to_string(g.degree));
    prepared = prepared + counterterms.evaluate(left) * chi.evaluate(right);
  }
  return prepared;
}

/// Birkhoff decomposition chi = minus^(*-1) * plus driven by the given
/// Rota-Baxter splitting, by ascending degree. With minimal subtraction
/// the minus part is pure poles and the plus part is holomorphic.
struct BirkhoffFactors {
  Character minus;
  Character plus;
};

inline BirkhoffFactors birkhoff(const Character& chi,
                                const RotaBaxterOp& rb = minimal_subtraction()) {
  Character minus = Character::counit_character(chi.catalog_ptr(), chi.truncation());
  Character plus = Character::counit_character(chi.catalog_ptr(), chi.truncation());
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    LaurentSeries prepared = bogoliubov_prepare(chi, minus, g);
    LaurentSeries neg = -rb.apply(prepared);
    plus.set_value(g, prepared + neg);
    minus.set_value(g, std::move(neg));
  }
  return {std::move(minus), std::move(plus)};
}

/// Convolution commutator of two infinitesimal characters; the bracket
/// of the Lie algebra.
inline InfinitesimalCharacter lie_bracket(const InfinitesimalCharacter& a,
                                          const InfinitesimalCharacter& b) {
  HopfAlgebra H(a.catalog_ptr());
  int trunc = std::min(a.truncation(), b.truncation());
  InfinitesimalCharacter out(a.catalog_ptr(), trunc);
  auto fa = a.as_fn();
  auto fb = b.as_fn();
  for (const auto& e : a.catalog().entries()) {
    Generator g{e.key, e.degree};
    HopfElement xg = HopfElement::from_generator(g);
    out.set_value(g, convolve_eval(H, fa, fb, xg, trunc) - convolve_eval(H, fb, fa, xg, trunc));
  }
  return out;
}

} // namespace renorm

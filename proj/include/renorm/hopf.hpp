#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "renorm/catalog.hpp"
#include "renorm/rational.hpp"

namespace renorm {

/// One polynomial variable of the Hopf algebra: a catalog graph,
/// identified by canonical key and graded by loop number.
struct Generator {
  std::string key;
  int degree = 0;

  bool operator==(const Generator& o) const { return key == o.key; }
  bool operator<(const Generator& o) const {
    return std::tie(degree, key) < std::tie(o.degree, o.key);
  }
};

/// A product of generators (multiset). The empty monomial is the unit;
/// a disjoint union of graphs is exactly a product of their variables.
class Monomial {
public:
  Monomial() = default;

  explicit Monomial(Generator g) : factors_{std::move(g)} {}

  static Monomial unit() { return {}; }

  static Monomial from_factors(std::vector<Generator> factors) {
    Monomial m;
    m.factors_ = std::move(factors);
    std::sort(m.factors_.begin(), m.factors_.end());
    return m;
  }

  const std::vector<Generator>& factors() const { return factors_; }

  bool is_unit() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& g : factors_) d += g.degree;
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    std::vector<Generator> f = factors_;
    f.insert(f.end(), o.factors_.begin(), o.factors_.end());
    return from_factors(std::move(f));
  }

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
  bool operator<(const Monomial& o) const {
    auto proj = [](const Monomial& m) {
      std::vector<std::pair<int, std::string>> v;
      for (const auto& g : m.factors_) v.emplace_back(g.degree, g.key);
      return std::make_pair(m.degree(), v);
    };
    return proj(*this) < proj(o);
  }

private:
  std::vector<Generator> factors_; // sorted
};

/// Finite rational linear combination of monomials.
class HopfElement {
public:
  HopfElement() = default;

  static HopfElement zero() { return {}; }

  static HopfElement unit() { return from_monomial(Monomial::unit()); }

  static HopfElement from_monomial(const Monomial& m, Rational coeff = Rational(1)) {
    HopfElement x;
    if (coeff != 0) x.terms_[m] = std::move(coeff);
    return x;
  }

  static HopfElement from_generator(const Generator& g, Rational coeff = Rational(1)) {
    return from_monomial(Monomial(g), std::move(coeff));
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  HopfElement operator+(const HopfElement& o) const {
    HopfElement out = *this;
    for (const auto& [m, c] : o.terms_) out.accumulate(m, c);
    return out;
  }

  HopfElement operator-(const HopfElement& o) const {
    HopfElement out = *this;
    for (const auto& [m, c] : o.terms_) out.accumulate(m, -c);
    return out;
  }

  HopfElement operator-() const {
    HopfElement out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  HopfElement operator*(const HopfElement& o) const {
    HopfElement out;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) out.accumulate(m1 * m2, c1 * c2);
    return out;
  }

  HopfElement operator*(const Rational& s) const {
    HopfElement out;
    if (s == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
  }

  void accumulate(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  bool operator==(const HopfElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const HopfElement& o) const { return !(*this == o); }

private:
  std::map<Monomial, Rational> terms_;
};

inline HopfElement operator*(const Rational& s, const HopfElement& x) { return x * s; }

/// Element of the tensor square, same representation one level up.
class TensorElement {
public:
  using Key = std::pair<Monomial, Monomial>;

  TensorElement() = default;

  static TensorElement from_pair(Monomial a, Monomial b, Rational coeff = Rational(1)) {
    TensorElement t;
    if (coeff != 0) t.terms_[{std::move(a), std::move(b)}] = std::move(coeff);
    return t;
  }

  const std::map<Key, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& a, const Monomial& b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  TensorElement operator+(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [k, c] : o.terms_) out.accumulate(k.first, k.second, c);
    return out;
  }

  TensorElement operator-(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [k, c] : o.terms_) out.accumulate(k.first, k.second, -c);
    return out;
  }

  /// Componentwise product on H (x) H.
  TensorElement operator*(const TensorElement& o) const {
    TensorElement out;
    for (const auto& [k1, c1] : terms_)
      for (const auto& [k2, c2] : o.terms_)
        out.accumulate(k1.first * k2.first, k1.second * k2.second, c1 * c2);
    return out;
  }

  TensorElement operator*(const Rational& s) const {
    TensorElement out;
    if (s == 0) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
    return out;
  }

  void accumulate(const Monomial& a, const Monomial& b, const Rational& c) {
    Key k{a, b};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(std::move(k), c);
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  bool operator==(const TensorElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const TensorElement& o) const { return !(*this == o); }

private:
  std::map<Key, Rational> terms_;
};

/// The free commutative Hopf algebra over a graph catalog: coproduct
/// from the subgraph/contraction structure, counit, antipode, the
/// loop-number grading operator and the insertion product.
class HopfAlgebra {
public:
  explicit HopfAlgebra(CatalogPtr catalog) : cat_(std::move(catalog)) {
    if (!cat_) throw domain_error("Hopf algebra needs a catalog");
  }

  const GraphCatalog& catalog() const { return *cat_; }
  const CatalogPtr& catalog_ptr() const { return cat_; }

  Generator generator(const GraphCatalog::Entry& e) const { return {e.key, e.degree}; }

  Generator generator_by_name(const std::string& name) const {
    return generator(cat_->by_name(name));
  }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    out.reserve(cat_->size());
    for (const auto& e : cat_->entries()) out.push_back({e.key, e.degree});
    return out;
  }

  /// Resolves a graph to a catalog generator, or to the unit monomial
  /// when it carries no loops.
  Monomial monomial_of_graph(const FeynmanGraph& g, const std::string& context) const {
    if (g.empty() || loop_number(g) == 0) return Monomial::unit();
    std::string key = canonical_form(g);
    if (!cat_->contains_key(key))
      throw coverage_error("catalog is missing a graph with canonical key '" + key +
                           "' needed by " + context);
    const auto& e = cat_->by_key(key);
    return Monomial(Generator{e.key, e.degree});
  }

  /// The nontrivial coproduct terms of a generator: one (subgraph
  /// monomial, contraction monomial) pair per admissible embedding.
  std::vector<std::pair<Monomial, Monomial>> reduced_coproduct(const Generator& g) const {
    const auto& entry = cat_->by_key(g.key);
    std::vector<std::pair<Monomial, Monomial>> out;
    for (const auto& emb : admissible_subgraphs(entry.graph)) {
      Monomial left = Monomial::unit();
      for (const auto& comp : emb.components)
        left = left * monomial_of_graph(induced_subgraph(entry.graph, comp),
                                        "a subgraph of '" + entry.name + "'");
      Monomial right = monomial_of_graph(contract(entry.graph, emb),
                                         "a contraction of '" + entry.name + "'");
      out.emplace_back(std::move(left), std::move(right));
    }
    return out;
  }

  TensorElement coproduct(const Generator& g) const {
    HopfElement xg = HopfElement::from_generator(g);
    TensorElement out = TensorElement::from_pair(Monomial::unit(), Monomial(g)) +
                        TensorElement::from_pair(Monomial(g), Monomial::unit());
    for (const auto& [left, right] : reduced_coproduct(g))
      out.accumulate(left, right, Rational(1));
    return out;
  }

  /// Algebra-map extension to monomials and linear extension to elements.
  TensorElement coproduct(const Monomial& m) const {
    TensorElement out = TensorElement::from_pair(Monomial::unit(), Monomial::unit());
    for (const auto& g : m.factors()) out = out * coproduct(g);
    return out;
  }

  TensorElement coproduct(const HopfElement& x) const {
    TensorElement out;
    for (const auto& [m, c] : x.terms()) out = out + coproduct(m) * c;
    return out;
  }

  /// Coefficient of the empty monomial.
  Rational counit(const HopfElement& x) const { return x.coeff(Monomial::unit()); }

  HopfElement antipode(const Generator& g) const {
    HopfElement s = HopfElement::from_generator(g, Rational(-1));
    for (const auto& [left, right] : reduced_coproduct(g))
      s = s - antipode(left) * HopfElement::from_monomial(right);
    return s;
  }

  /// S is an algebra map here (the algebra is commutative).
  HopfElement antipode(const Monomial& m) const {
    HopfElement out = HopfElement::unit();
    for (const auto& g : m.factors()) out = out * antipode(g);
    return out;
  }

  HopfElement antipode(const HopfElement& x) const {
    HopfElement out;
    for (const auto& [m, c] : x.terms()) out = out + antipode(m) * c;
    return out;
  }

  /// Grading operator Y: multiplies the degree-n component by n.
  HopfElement grading(const HopfElement& x) const {
    HopfElement out;
    for (const auto& [m, c] : x.terms())
      out.accumulate(m, c * Rational(m.degree()));
    return out;
  }

  /// Sum over catalog generators of the stated degree of the pairing
  /// coefficient of (x_g1, x_g2) in their coproduct.
  HopfElement insertion_product(const Generator& g1, const Generator& g2) const {
    int degree = g1.degree + g2.degree;
    if (cat_->degree_bound() < degree)
      throw coverage_error("insertion product needs catalog degree " + std::to_string(degree) +
                           ", bound is " + std::to_string(cat_->degree_bound()));
    HopfElement out;
    for (const auto& e : cat_->entries()) {
      if (e.degree != degree) continue;
      Generator g{e.key, e.degree};
      Rational c = coproduct(g).coeff(Monomial(g1), Monomial(g2));
      if (c != 0) out.accumulate(Monomial(g), c);
    }
    return out;
  }

private:
  CatalogPtr cat_;
};

} // namespace renorm

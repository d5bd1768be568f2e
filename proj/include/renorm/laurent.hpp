#pragma once

#include <map>
#include <utility>

#include "renorm/config.hpp"
#include "renorm/errors.hpp"
#include "renorm/logpoly.hpp"

namespace renorm {

/// Truncated Laurent series in the regularization variable z, with
/// coefficients in Q[L]. Poles are tracked exactly; powers above the
/// truncation order are unknown rather than zero. The truncation order
/// never drops below 0, so the constant term is always visible.
class LaurentSeries {
public:
  LaurentSeries() : trunc_(limits().truncation) {}

  explicit LaurentSeries(int truncation) : trunc_(check_trunc(truncation)) {}

  static LaurentSeries zero(int truncation = limits().truncation) {
    return LaurentSeries(truncation);
  }

  static LaurentSeries constant(const Rational& c, int truncation = limits().truncation) {
    LaurentSeries s(truncation);
    s.set_coeff(0, LogPoly(c));
    return s;
  }

  static LaurentSeries one(int truncation = limits().truncation) {
    return constant(Rational(1), truncation);
  }

  /// c * L^lpow * z^zpow.
  static LaurentSeries term(int zpow, LogPoly coeff, int truncation = limits().truncation) {
    LaurentSeries s(truncation);
    s.set_coeff(zpow, std::move(coeff));
    return s;
  }

  static LaurentSeries z_power(int zpow, int truncation = limits().truncation) {
    return term(zpow, LogPoly(Rational(1)), truncation);
  }

  int truncation_order() const { return trunc_; }

  /// Largest k with all powers < -k absent; 0 for pole-free series.
  int pole_order() const {
    if (terms_.empty() || terms_.begin()->first >= 0) return 0;
    return -terms_.begin()->first;
  }

  bool is_zero() const { return terms_.empty(); }

  bool has_pole() const { return pole_order() > 0; }

  /// True when no coefficient depends on L.
  bool is_l_free() const {
    for (const auto& [p, c] : terms_)
      if (!c.is_constant()) return false;
    return true;
  }

  const LogPoly& coeff(int zpow) const {
    static const LogPoly zero_poly;
    auto it = terms_.find(zpow);
    return it == terms_.end() ? zero_poly : it->second;
  }

  const std::map<int, LogPoly>& terms() const { return terms_; }

  void set_coeff(int zpow, LogPoly c) {
    if (zpow > trunc_)
      throw resource_error("coefficient beyond truncation order");
    if (c.is_zero())
      terms_.erase(zpow);
    else
      terms_[zpow] = std::move(c);
  }

  LaurentSeries operator+(const LaurentSeries& o) const {
    LaurentSeries out(std::min(trunc_, o.trunc_));
    for (const auto& [p, c] : terms_)
      if (p <= out.trunc_) out.accumulate(p, c);
    for (const auto& [p, c] : o.terms_)
      if (p <= out.trunc_) out.accumulate(p, c);
    return out;
  }

  LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }

  LaurentSeries operator-() const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, -c);
    return out;
  }

  LaurentSeries operator*(const LaurentSeries& o) const {
    // Unknown tails multiply the partner's lowest power, which bounds the
    // reliable output order.
    int out_trunc = std::min(trunc_ + o.lowest_known_power(),
                             o.trunc_ + lowest_known_power());
    if (out_trunc < 0)
      throw resource_error("product loses the constant term; raise the truncation order");
    LaurentSeries out(out_trunc);
    for (const auto& [p, c] : terms_)
      for (const auto& [q, d] : o.terms_) {
        if (p + q > out_trunc) continue;
        out.accumulate(p + q, c * d);
      }
    if (out.pole_order() > limits().pole_cap)
      throw resource_error("product pole order " + std::to_string(out.pole_order()) +
                           " exceeds the configured cap " + std::to_string(limits().pole_cap));
    return out;
  }

  LaurentSeries operator*(const Rational& s) const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_) {
      LogPoly sc = c * s;
      if (!sc.is_zero()) out.terms_.emplace(p, std::move(sc));
    }
    return out;
  }

  LaurentSeries scale(const LogPoly& s) const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_) {
      LogPoly sc = c * s;
      if (!sc.is_zero()) out.terms_.emplace(p, std::move(sc));
    }
    return out;
  }

  /// Term-wise z-derivative. Costs one order of truncation.
  LaurentSeries dz() const {
    if (trunc_ == 0)
      throw resource_error("z-derivative needs truncation order >= 1");
    LaurentSeries out(trunc_ - 1);
    for (const auto& [p, c] : terms_) {
      if (p == 0) continue;
      if (p - 1 > out.trunc_) continue;
      out.terms_.emplace(p - 1, c * Rational(p));
    }
    return out;
  }

  /// Term-wise d/dL.
  LaurentSeries dl() const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_) {
      LogPoly d = c.derivative();
      if (!d.is_zero()) out.terms_.emplace(p, std::move(d));
    }
    return out;
  }

  /// Strict pole part (powers < 0). This is the minimal-subtraction image.
  LaurentSeries pole_part() const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_)
      if (p < 0) out.terms_.emplace(p, c);
    return out;
  }

  /// Holomorphic part (powers >= 0).
  LaurentSeries regular_part() const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_)
      if (p >= 0) out.terms_.emplace(p, c);
    return out;
  }

  /// Sets L = 0 in every coefficient.
  LaurentSeries at_l0() const {
    LaurentSeries out(trunc_);
    for (const auto& [p, c] : terms_) {
      if (c.constant_term() == 0) continue;
      out.terms_.emplace(p, LogPoly(c.constant_term()));
    }
    return out;
  }

  /// Coefficient of z^-1.
  const LogPoly& residue() const { return coeff(-1); }

  /// Restricts to truncation order n (n <= current order).
  LaurentSeries truncate_to(int n) const {
    LaurentSeries out(std::min(check_trunc(n), trunc_));
    for (const auto& [p, c] : terms_)
      if (p <= out.trunc_) out.terms_.emplace(p, c);
    return out;
  }

  bool operator==(const LaurentSeries& o) const {
    return trunc_ == o.trunc_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

private:
  static int check_trunc(int n) {
    if (n < 0) throw resource_error("truncation order must be >= 0");
    return n;
  }

  /// Lowest power that could carry a nonzero coefficient.
  int lowest_known_power() const {
    return terms_.empty() ? trunc_ + 1 : terms_.begin()->first;
  }

  void accumulate(int p, const LogPoly& c) {
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(p, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<int, LogPoly> terms_; // z-power -> coefficient in Q[L]
  int trunc_;
};

inline LaurentSeries operator*(const Rational& s, const LaurentSeries& x) { return x * s; }

/// Multiplies x by exp(a * L * z^z_weight) with z_weight in {0, 1}.
/// For z_weight = 1 the expansion is exact in every retained z-power;
/// for z_weight = 0 it is cut at L-degree = truncation order, which is
/// the working convention for materializing t^Y.
inline LaurentSeries mul_exp_l(const LaurentSeries& x, const Rational& a, int z_weight) {
  if (x.is_zero() || a == 0) return x;
  const int n = x.truncation_order();
  const int kmax = z_weight == 1 ? n + x.pole_order() : n;
  // The monomial factors are exact, so they carry enough headroom not to
  // degrade the truncation of the partial products.
  const int factor_trunc = n + x.pole_order() + 2;
  LaurentSeries out = x;
  LaurentSeries power = x; // x * (a L z^w)^k / k!
  for (int k = 1; k <= kmax; ++k) {
    LaurentSeries factor =
        LaurentSeries::term(z_weight, LogPoly({Rational(0), a / Rational(k)}), factor_trunc);
    power = power * factor;
    out = out + power;
    if (power.is_zero()) break;
  }
  return out;
}

} // namespace renorm

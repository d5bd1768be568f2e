#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "renorm/rational.hpp"

namespace renorm {

/// Polynomial in the log-scale variable L (= log t) with rational
/// coefficients. Scale dependence t^c enters the kernel as exp(c*L)
/// expanded to finite order, so these polynomials close every
/// t-derivative we need.
class LogPoly {
public:
  LogPoly() = default;

  explicit LogPoly(Rational constant) {
    coeffs_.push_back(std::move(constant));
    strip();
  }

  LogPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { strip(); }

  static LogPoly from_coeffs(std::vector<Rational> coeffs) {
    LogPoly p;
    p.coeffs_ = std::move(coeffs);
    p.strip();
    return p;
  }

  /// Coefficient of L^k (zero beyond the stored degree).
  const Rational& at(std::size_t k) const {
    static const Rational zero{0};
    return k < coeffs_.size() ? coeffs_[k] : zero;
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// True when the polynomial is a constant (no L dependence).
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& constant_term() const { return at(0); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  LogPoly operator+(const LogPoly& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational{0});
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return from_coeffs(std::move(out));
  }

  LogPoly operator-(const LogPoly& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational{0});
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
    return from_coeffs(std::move(out));
  }

  LogPoly operator-() const {
    std::vector<Rational> out(coeffs_);
    for (auto& c : out) c = -c;
    return from_coeffs(std::move(out));
  }

  LogPoly operator*(const LogPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational{0});
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        out[i + j] += coeffs_[i] * o.coeffs_[j];
    return from_coeffs(std::move(out));
  }

  LogPoly operator*(const Rational& s) const {
    std::vector<Rational> out(coeffs_);
    for (auto& c : out) c *= s;
    return from_coeffs(std::move(out));
  }

  /// d/dL.
  LogPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1, Rational{0});
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      out[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return from_coeffs(std::move(out));
  }

  bool operator==(const LogPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LogPoly& o) const { return !(*this == o); }

private:
  void strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_; // coeffs_[k] multiplies L^k
};

inline LogPoly operator*(const Rational& s, const LogPoly& p) { return p * s; }

} // namespace renorm

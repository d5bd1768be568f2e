#pragma once

#include <functional>
#include <string>
#include <utility>

#include "renorm/laurent.hpp"

namespace renorm {

/// A linear operator P on the series algebra together with its
/// Rota-Baxter weight. The Birkhoff recursion is written against this
/// interface so subtraction schemes other than minimal subtraction can
/// be plugged in.
struct RotaBaxterOp {
  std::string name;
  Rational weight;
  std::function<LaurentSeries(const LaurentSeries&)> apply;
};

/// Minimal subtraction: projection onto the strict pole part. Weight 1.
inline RotaBaxterOp minimal_subtraction() {
  return {"minimal-subtraction", Rational(1),
          [](const LaurentSeries& x) { return x.pole_part(); }};
}

/// Integration from 0, defined on pole-free series: term-wise
/// antiderivative with zero constant term. Weight 0.
inline RotaBaxterOp integration_op() {
  return {"integration", Rational(0), [](const LaurentSeries& x) {
            if (x.has_pole())
              throw domain_error("integration operator needs a pole-free series");
            LaurentSeries out(x.truncation_order() + 1);
            for (const auto& [p, c] : x.terms())
              out.set_coeff(p + 1, c * Rational(1, p + 1));
            return out;
          }};
}

/// P(x)P(y) + theta*P(xy) - P(x*P(y)) - P(P(x)*y). Identically zero on
/// every pair exactly when P is Rota-Baxter of weight theta.
inline LaurentSeries rb_identity_residual(const RotaBaxterOp& rb, const LaurentSeries& x,
                                          const LaurentSeries& y) {
  const auto& P = rb.apply;
  return P(x) * P(y) + P(x * y) * rb.weight - P(x * P(y)) - P(P(x) * y);
}

} // namespace renorm

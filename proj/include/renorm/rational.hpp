#pragma once

#include <gmpxx.h>

#include <string>

#include "renorm/errors.hpp"

namespace renorm {

/// Exact arbitrary-precision rational. All kernel arithmetic is exact;
/// floating point only appears in the optional decimal rendering.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw parse_error("empty rational literal");
  for (char c : text) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw parse_error("bad rational literal '" + text + "'");
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw parse_error("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

inline double rational_to_double(const Rational& q) {
  return q.get_d();
}

} // namespace renorm

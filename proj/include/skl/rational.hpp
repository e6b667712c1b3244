#pragma once

#include <gmpxx.h>

#include <string>

#include "skl/errors.hpp"

namespace skl {

// Exact arbitrary-precision rational scalar.  GMP arithmetic keeps results
// canonical (gcd-reduced, positive denominator), but the two-argument
// mpq_class constructor does not — and comparisons silently assume
// canonical form.  Always build fractions through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational rat_inv(const Rational& q) {
  if (is_zero(q)) throw DomainError("division by zero rational");
  return Rational(1) / q;
}

// Canonical string form: "p" or "p/q" with q > 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "p" or "p/q" (optionally signed).  Rejects q == 0 and junk.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' ||
          ch == '+' || ch == '/'))
      throw ParseError("bad character in rational literal: '" + s + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw ParseError("unparsable rational literal: '" + s + "'");
  if (sgn(q.get_den()) == 0)
    throw ParseError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace skl

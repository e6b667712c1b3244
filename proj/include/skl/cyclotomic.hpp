#pragma once

#include <string>
#include <vector>

#include "skl/rational.hpp"

namespace skl {

// Immutable per-conductor data.  Instances live forever in a global
// registry; CycNum values refer to them by conductor.
struct CycField {
  int conductor = 1;
  int degree = 1;             // phi(m) = deg Phi_m
  std::vector<Rational> phi;  // Phi_m coefficients, monic, size degree+1
};

const CycField& cyc_field(int conductor);

// Element of the cyclotomic field Q(zeta_m) in the power basis
// {1, z, ..., z^{phi(m)-1}} modulo Phi_m, with exact rational coordinates.
// Trailing zero coordinates are trimmed, so purely rational values carry an
// effective degree of 0 and multiply with a single GMP operation; this is
// the fast path the heavy rewriting computations rely on.
//
// Mixed-conductor arithmetic embeds both operands into Q(zeta_lcm) first.
class CycNum {
public:
  CycNum() : conductor_(1) {}
  CycNum(long v) : conductor_(1) { if (v != 0) c_.assign(1, Rational(v)); }
  CycNum(int v) : CycNum(static_cast<long>(v)) {}
  explicit CycNum(const Rational& v) : conductor_(1) {
    if (!skl::is_zero(v)) c_.assign(1, v);
  }
  // Raw coordinates in the power basis of Q(zeta_m); reduced and trimmed.
  CycNum(int conductor, std::vector<Rational> coords);

  static CycNum zeta(int conductor);  // the primitive root zeta_m

  int conductor() const { return conductor_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_value() const;  // requires is_rational()
  // Coordinate of z^k (0 beyond the trimmed length).
  Rational coord(int k) const {
    return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0);
  }
  int effective_degree() const { return static_cast<int>(c_.size()) - 1; }

  // Re-expresses the value in Q(zeta_to); `to` must be a multiple of the
  // current conductor.
  CycNum embedded(int to) const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  CycNum inverse() const;
  CycNum pow(long e) const;  // integer exponent, negative allowed

  // Canonical human/serialization form, e.g. "(-3/2)*z^2 + 1/4" with
  // z = zeta_m; "0" for zero.
  std::string str() const;

private:
  void reduce_();  // reduce coords mod Phi_m and trim trailing zeros

  int conductor_;
  std::vector<Rational> c_;  // trimmed; empty means 0
};

inline bool is_zero(const CycNum& v) { return v.is_zero(); }

// Parses an exact scalar expression over Q(zeta_conductor): integers,
// rationals, the symbol z (= zeta_m), + - * / ^ and parentheses.
// Examples: "1", "-3/2", "z^4", "(1-z^3)/2", "2*z^2 - z + 1/3".
CycNum parse_cyc(const std::string& text, int conductor);

}  // namespace skl

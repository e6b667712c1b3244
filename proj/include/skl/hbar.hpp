#pragma once

#include <limits>
#include <string>
#include <vector>

#include "skl/cyclotomic.hpp"

namespace skl {

// Dense polynomial in hbar with CycNum coefficients, ascending exponents,
// trailing zeros trimmed (empty = zero polynomial).
class HbarPoly {
public:
  HbarPoly() = default;
  explicit HbarPoly(CycNum constant) {
    if (!constant.is_zero()) c_.push_back(std::move(constant));
  }
  explicit HbarPoly(std::vector<CycNum> coeffs) : c_(std::move(coeffs)) {
    trim_();
  }

  static HbarPoly hbar() {  // the polynomial "hbar"
    return HbarPoly(std::vector<CycNum>{CycNum(0), CycNum(1)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  const CycNum& coeff(int k) const;
  CycNum at_zero() const { return c_.empty() ? CycNum(0) : c_[0]; }
  // Index of the lowest nonzero coefficient; INT_MAX for the zero polynomial.
  int valuation() const;

  HbarPoly operator-() const;
  friend HbarPoly operator+(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator-(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b);
  friend bool operator==(const HbarPoly& a, const HbarPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const HbarPoly& a, const HbarPoly& b) {
    return !(a == b);
  }

  HbarPoly scaled(const CycNum& s) const;
  HbarPoly shifted_up(int k) const;    // * hbar^k
  HbarPoly shifted_down(int k) const;  // / hbar^k, requires valuation >= k

  // Monic gcd via the Euclidean algorithm (field coefficients).
  static HbarPoly gcd(HbarPoly a, HbarPoly b);
  // Exact division (throws InternalError on nonzero remainder).
  static HbarPoly divexact(const HbarPoly& a, const HbarPoly& b);

  std::string str() const;  // e.g. "(1 - z^3)*h^2 + 2*h + 1", h = hbar

private:
  void trim_();
  std::vector<CycNum> c_;
};

constexpr int kValInfinity = std::numeric_limits<int>::max();

// Element of the local ring k(zeta)[hbar] localized at (hbar): a fraction
// num/den whose denominator is a unit at hbar = 0.  Canonical form:
// gcd(num, den) = 1 and den(0) = 1, so component-wise equality is value
// equality.  Construction enforces regularity; violating it (e.g. dividing
// by a scalar divisible by hbar) raises DomainError.
class HbarScalar {
public:
  HbarScalar() : num_(), den_(HbarPoly(CycNum(1))) {}
  HbarScalar(const CycNum& constant)
      : num_(HbarPoly(constant)), den_(HbarPoly(CycNum(1))) {}
  HbarScalar(int v) : HbarScalar(CycNum(v)) {}
  HbarScalar(HbarPoly num, HbarPoly den);  // reduces and normalizes

  static HbarScalar hbar() {
    return HbarScalar(HbarPoly::hbar(), HbarPoly(CycNum(1)));
  }

  const HbarPoly& num() const { return num_; }
  const HbarPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // hbar-adic valuation; kValInfinity for zero.
  int valuation() const { return num_.valuation(); }
  // Value at hbar = 0 (a ring homomorphism on this local ring).
  CycNum eval0() const { return num_.at_zero(); }
  // Division by hbar^k; requires valuation() >= k.
  HbarScalar div_hbar(int k) const;

  HbarScalar operator-() const;
  HbarScalar& operator+=(const HbarScalar& o);
  HbarScalar& operator-=(const HbarScalar& o);
  HbarScalar& operator*=(const HbarScalar& o);
  HbarScalar& operator/=(const HbarScalar& o);
  friend HbarScalar operator+(HbarScalar a, const HbarScalar& b) {
    return a += b;
  }
  friend HbarScalar operator-(HbarScalar a, const HbarScalar& b) {
    return a -= b;
  }
  friend HbarScalar operator*(HbarScalar a, const HbarScalar& b) {
    return a *= b;
  }
  friend HbarScalar operator/(HbarScalar a, const HbarScalar& b) {
    return a /= b;
  }
  friend bool operator==(const HbarScalar& a, const HbarScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const HbarScalar& a, const HbarScalar& b) {
    return !(a == b);
  }

  HbarScalar inverse() const;
  std::string str() const;

private:
  void normalize_();
  HbarPoly num_, den_;
};

inline bool is_zero(const HbarScalar& v) { return v.is_zero(); }

// Element of the full rational-function field k(zeta)(hbar).  Unlike
// HbarScalar no regularity at hbar = 0 is imposed, so linear elimination can
// pivot freely; evaluation at hbar = 0 is a partial operation that throws
// when the (reduced) denominator vanishes there.  Canonical form:
// gcd(num, den) = 1 and den monic, so component equality is value equality.
class HbarRat {
public:
  HbarRat() : num_(), den_(HbarPoly(CycNum(1))) {}
  HbarRat(const CycNum& constant)
      : num_(HbarPoly(constant)), den_(HbarPoly(CycNum(1))) {}
  HbarRat(int v) : HbarRat(CycNum(v)) {}
  HbarRat(const HbarScalar& s) : num_(s.num()), den_(s.den()) { normalize_(); }
  HbarRat(HbarPoly num, HbarPoly den);  // reduces and normalizes

  static HbarRat hbar() {
    return HbarRat(HbarPoly::hbar(), HbarPoly(CycNum(1)));
  }

  const HbarPoly& num() const { return num_; }
  const HbarPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // hbar-adic valuation val(num) - val(den); negative at a pole,
  // kValInfinity for zero.
  int valuation() const;
  bool regular_at_zero() const { return !den_.at_zero().is_zero(); }
  // Value at hbar = 0; throws DomainError at a pole.
  CycNum eval0() const;
  // Exact division by hbar^k (always defined in the field, any sign of k).
  HbarRat div_hbar(int k) const {
    if (k >= 0) return HbarRat(num_, den_.shifted_up(k));
    return HbarRat(num_.shifted_up(-k), den_);
  }
  // Conversion into the hbar-regular local ring; throws DomainError at a
  // pole (the hard error the specialization contract requires).
  HbarScalar to_local() const { return HbarScalar(num_, den_); }

  HbarRat operator-() const;
  HbarRat& operator+=(const HbarRat& o);
  HbarRat& operator-=(const HbarRat& o);
  HbarRat& operator*=(const HbarRat& o);
  HbarRat& operator/=(const HbarRat& o);
  friend HbarRat operator+(HbarRat a, const HbarRat& b) { return a += b; }
  friend HbarRat operator-(HbarRat a, const HbarRat& b) { return a -= b; }
  friend HbarRat operator*(HbarRat a, const HbarRat& b) { return a *= b; }
  friend HbarRat operator/(HbarRat a, const HbarRat& b) { return a /= b; }
  friend bool operator==(const HbarRat& a, const HbarRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const HbarRat& a, const HbarRat& b) {
    return !(a == b);
  }

  HbarRat inverse() const;
  std::string str() const;

private:
  void normalize_();
  HbarPoly num_, den_;
};

inline bool is_zero(const HbarRat& v) { return v.is_zero(); }

}  // namespace skl

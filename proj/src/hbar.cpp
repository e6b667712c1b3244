#include "skl/hbar.hpp"

#include <sstream>

#include "skl/errors.hpp"

namespace skl {

void HbarPoly::trim_() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const CycNum& HbarPoly::coeff(int k) const {
  static const CycNum zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

int HbarPoly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return kValInfinity;
}

HbarPoly HbarPoly::operator-() const {
  HbarPoly r = *this;
  for (CycNum& v : r.c_) v = -v;
  return r;
}

HbarPoly operator+(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly r = a;
  if (b.c_.size() > r.c_.size()) r.c_.resize(b.c_.size());
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  r.trim_();
  return r;
}

HbarPoly operator-(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly r = a;
  if (b.c_.size() > r.c_.size()) r.c_.resize(b.c_.size());
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
  r.trim_();
  return r;
}

HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return HbarPoly();
  std::vector<CycNum> prod(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return HbarPoly(std::move(prod));
}

HbarPoly HbarPoly::scaled(const CycNum& s) const {
  if (s.is_zero()) return HbarPoly();
  HbarPoly r = *this;
  for (CycNum& v : r.c_) v *= s;
  return r;
}

HbarPoly HbarPoly::shifted_up(int k) const {
  if (c_.empty()) return HbarPoly();
  std::vector<CycNum> r(c_.size() + k);
  for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return HbarPoly(std::move(r));
}

HbarPoly HbarPoly::shifted_down(int k) const {
  if (c_.empty()) return HbarPoly();
  if (valuation() < k)
    throw DomainError("HbarPoly::shifted_down: valuation " +
                      std::to_string(valuation()) + " < " + std::to_string(k));
  std::vector<CycNum> r(c_.begin() + k, c_.end());
  return HbarPoly(std::move(r));
}

namespace {

// Remainder of a by monic-normalized b (b is scaled internally).
HbarPoly poly_rem(HbarPoly a, const HbarPoly& b) {
  int db = b.degree();
  CycNum lead_inv = b.coeff(db).inverse();
  while (a.degree() >= db) {
    int da = a.degree();
    CycNum f = a.coeff(da) * lead_inv;
    // a -= f * h^{da-db} * b
    std::vector<CycNum> sub(da + 1);
    for (int i = 0; i <= db; ++i) sub[da - db + i] = b.coeff(i) * f;
    a = a - HbarPoly(std::move(sub));
    if (a.is_zero()) break;
  }
  return a;
}

}  // namespace

HbarPoly HbarPoly::gcd(HbarPoly a, HbarPoly b) {
  while (!b.is_zero()) {
    HbarPoly r = poly_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // monic normalization
  CycNum inv = a.coeff(a.degree()).inverse();
  return a.scaled(inv);
}

HbarPoly HbarPoly::divexact(const HbarPoly& a, const HbarPoly& b) {
  if (b.is_zero()) throw InternalError("HbarPoly::divexact by zero");
  if (a.is_zero()) return HbarPoly();
  int db = b.degree();
  CycNum lead_inv = b.coeff(db).inverse();
  HbarPoly rem = a;
  std::vector<CycNum> q(a.degree() - db + 1);
  while (rem.degree() >= db) {
    int da = rem.degree();
    CycNum f = rem.coeff(da) * lead_inv;
    q[da - db] = f;
    std::vector<CycNum> sub(da + 1);
    for (int i = 0; i <= db; ++i) sub[da - db + i] = b.coeff(i) * f;
    rem = rem - HbarPoly(std::move(sub));
    if (rem.is_zero()) break;
  }
  if (!rem.is_zero())
    throw InternalError("HbarPoly::divexact: nonzero remainder");
  return HbarPoly(std::move(q));
}

std::string HbarPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c_[k].is_zero()) continue;
    std::string cs = c_[k].str();
    bool simple = cs.find_first_of("+-") == std::string::npos ||
                  (cs[0] == '-' && cs.find_first_of("+-", 1) ==
                                       std::string::npos);  // single term
    std::string term;
    if (k == 0) {
      term = simple ? cs : "(" + cs + ")";
    } else {
      std::string hp = (k == 1) ? "h" : "h^" + std::to_string(k);
      if (cs == "1") term = hp;
      else if (cs == "-1") term = "-" + hp;
      else term = (simple && cs[0] != '-' ? cs : "(" + cs + ")") + "*" + hp;
    }
    if (first) {
      out << term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out << " - " << term.substr(1);
    } else {
      out << " + " << term;
    }
  }
  return out.str();
}

// ----------------------------- HbarScalar ----------------------------------

HbarScalar::HbarScalar(HbarPoly num, HbarPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw DomainError("HbarScalar: zero denominator");
  normalize_();
}

void HbarScalar::normalize_() {
  if (den_.at_zero().is_zero())
    throw DomainError(
        "HbarScalar: denominator vanishes at hbar=0 (not a local unit): " +
        den_.str());
  if (num_.is_zero()) {
    den_ = HbarPoly(CycNum(1));
    return;
  }
  HbarPoly g = HbarPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = HbarPoly::divexact(num_, g);
    den_ = HbarPoly::divexact(den_, g);
  }
  // pin the canonical scale: den(0) = 1
  CycNum d0 = den_.at_zero();
  if (d0.is_zero())
    throw InternalError("HbarScalar: normalization lost regularity");
  if (!(d0 == CycNum(1))) {
    CycNum inv = d0.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

HbarScalar HbarScalar::div_hbar(int k) const {
  if (is_zero()) return *this;
  if (valuation() < k)
    throw DomainError("HbarScalar::div_hbar: valuation " +
                      std::to_string(valuation()) + " < " + std::to_string(k));
  return HbarScalar(num_.shifted_down(k), den_);
}

HbarScalar HbarScalar::operator-() const {
  HbarScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

HbarScalar& HbarScalar::operator+=(const HbarScalar& o) {
  *this = HbarScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

HbarScalar& HbarScalar::operator-=(const HbarScalar& o) {
  *this = HbarScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  return *this;
}

HbarScalar& HbarScalar::operator*=(const HbarScalar& o) {
  *this = HbarScalar(num_ * o.num_, den_ * o.den_);
  return *this;
}

HbarScalar HbarScalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero hbar-scalar");
  // Flipping the fraction requires num(0) != 0; a positive-valuation scalar
  // has no hbar-regular inverse and this throws, by design.
  return HbarScalar(den_, num_);
}

HbarScalar& HbarScalar::operator/=(const HbarScalar& o) {
  return *this *= o.inverse();
}

std::string HbarScalar::str() const {
  if (den_ == HbarPoly(CycNum(1))) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ------------------------------ HbarRat -------------------------------------

HbarRat::HbarRat(HbarPoly num, HbarPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("HbarRat: zero denominator");
  normalize_();
}

void HbarRat::normalize_() {
  if (num_.is_zero()) {
    den_ = HbarPoly(CycNum(1));
    return;
  }
  HbarPoly g = HbarPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = HbarPoly::divexact(num_, g);
    den_ = HbarPoly::divexact(den_, g);
  }
  CycNum lead = den_.coeff(den_.degree());
  if (!(lead == CycNum(1))) {
    CycNum inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

int HbarRat::valuation() const {
  if (num_.is_zero()) return kValInfinity;
  return num_.valuation() - den_.valuation();
}

CycNum HbarRat::eval0() const {
  CycNum d0 = den_.at_zero();
  if (d0.is_zero())
    throw DomainError("HbarRat: pole at hbar=0, denominator " + den_.str());
  return num_.at_zero() / d0;
}

HbarRat HbarRat::operator-() const {
  HbarRat r = *this;
  r.num_ = -r.num_;
  return r;
}

HbarRat& HbarRat::operator+=(const HbarRat& o) {
  *this = HbarRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

HbarRat& HbarRat::operator-=(const HbarRat& o) {
  *this = HbarRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  return *this;
}

HbarRat& HbarRat::operator*=(const HbarRat& o) {
  *this = HbarRat(num_ * o.num_, den_ * o.den_);
  return *this;
}

HbarRat HbarRat::inverse() const {
  if (is_zero()) throw DomainError("division by zero rational hbar-scalar");
  return HbarRat(den_, num_);
}

HbarRat& HbarRat::operator/=(const HbarRat& o) { return *this *= o.inverse(); }

std::string HbarRat::str() const {
  if (den_ == HbarPoly(CycNum(1))) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace skl

#include "skl/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "skl/errors.hpp"

namespace skl {

namespace {

// --- dense rational polynomial helpers (internal, ascending coefficients) ---

using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
  while (!p.empty() && skl::is_zero(p.back())) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (skl::is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

// Quotient of an exact division a / b (asserts zero remainder).
Poly poly_divexact(Poly a, const Poly& b) {
  poly_trim(a);
  if (b.empty()) throw InternalError("poly_divexact: division by zero poly");
  Poly q;
  if (a.size() < b.size()) q.clear();
  else q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    Rational f = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
    if (a.empty()) break;
  }
  if (!a.empty())
    throw InternalError("poly_divexact: nonzero remainder");
  poly_trim(q);
  return q;
}

// General division with remainder, used by the inverse computation.
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  poly_trim(a);
  if (b.empty()) throw InternalError("poly_divmod: division by zero poly");
  q.clear();
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    Rational f = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
    if (a.empty()) break;
  }
  poly_trim(q);
  r = std::move(a);
}

// Cyclotomic polynomial Phi_m via Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d.
Poly cyclotomic_poly(int m, std::map<int, Poly>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  Poly num(m + 1, Rational(0));
  num[0] = Rational(-1);
  num[m] = Rational(1);
  Poly den{Rational(1)};
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) den = poly_mul(den, cyclotomic_poly(d, memo));
  }
  Poly phi = poly_divexact(num, den);
  memo[m] = phi;
  return phi;
}

struct Registry {
  std::mutex mtx;
  std::map<int, std::unique_ptr<CycField>> fields;
  std::map<int, Poly> phi_memo;
};

Registry& registry() {
  static Registry* r = new Registry();
  return *r;
}

}  // namespace

const CycField& cyc_field(int conductor) {
  if (conductor < 1)
    throw DomainError("conductor must be positive, got " +
                      std::to_string(conductor));
  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mtx);
  auto it = reg.fields.find(conductor);
  if (it != reg.fields.end()) return *it->second;

  auto f = std::make_unique<CycField>();
  f->conductor = conductor;
  f->phi = cyclotomic_poly(conductor, reg.phi_memo);
  f->degree = static_cast<int>(f->phi.size()) - 1;
  const CycField& ref = *f;
  reg.fields[conductor] = std::move(f);
  return ref;
}

CycNum::CycNum(int conductor, std::vector<Rational> coords)
    : conductor_(conductor), c_(std::move(coords)) {
  reduce_();
}

CycNum CycNum::zeta(int conductor) {
  const CycField& f = cyc_field(conductor);
  std::vector<Rational> c;
  if (f.degree >= 2) {
    c.assign(2, Rational(0));
    c[1] = Rational(1);
  } else {
    // phi(m) = 1 (m = 1 or 2): z is rational, z = -phi_0.
    c.assign(1, -f.phi[0]);
  }
  return CycNum(conductor, std::move(c));
}

void CycNum::reduce_() {
  const CycField& f = cyc_field(conductor_);
  int deg = f.degree;
  // Fold coordinates at and above deg back down using the monic relation
  // z^deg = -(phi_0 + ... + phi_{deg-1} z^{deg-1}), top index first so each
  // coordinate is folded exactly once.
  for (int k = static_cast<int>(c_.size()) - 1; k >= deg; --k) {
    Rational top = std::move(c_[k]);
    c_.pop_back();
    if (skl::is_zero(top)) continue;
    for (int i = 0; i < deg; ++i) c_[k - deg + i] -= top * f.phi[i];
  }
  while (!c_.empty() && skl::is_zero(c_.back())) c_.pop_back();
}

Rational CycNum::rational_value() const {
  if (!is_rational())
    throw DomainError("CycNum::rational_value on irrational value " + str());
  return c_.empty() ? Rational(0) : c_[0];
}

CycNum CycNum::embedded(int to) const {
  if (to == conductor_) return *this;
  if (to % conductor_ != 0)
    throw DomainError("cannot embed conductor " + std::to_string(conductor_) +
                      " into " + std::to_string(to));
  int stride = to / conductor_;
  std::vector<Rational> coords;
  coords.resize(c_.empty() ? 0 : (c_.size() - 1) * stride + 1, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) coords[k * stride] = c_[k];
  return CycNum(to, std::move(coords));
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (Rational& q : r.c_) q = -q;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (conductor_ != o.conductor_) {
    int m = std::lcm(conductor_, o.conductor_);
    *this = embedded(m);
    return *this += o.embedded(m);
  }
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  while (!c_.empty() && skl::is_zero(c_.back())) c_.pop_back();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  if (conductor_ != o.conductor_) {
    int m = std::lcm(conductor_, o.conductor_);
    *this = embedded(m);
    return *this -= o.embedded(m);
  }
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  while (!c_.empty() && skl::is_zero(c_.back())) c_.pop_back();
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  if (conductor_ != o.conductor_) {
    int m = std::lcm(conductor_, o.conductor_);
    *this = embedded(m);
    return *this *= o.embedded(m);
  }
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  // Schoolbook product on the trimmed (effective-degree) coordinates; for
  // rational values this is a single GMP multiply.
  std::vector<Rational> prod(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (skl::is_zero(c_[i])) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (!skl::is_zero(o.c_[j])) prod[i + j] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(prod);
  reduce_();
  return *this;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DomainError("division by zero cyclotomic scalar");
  if (is_rational()) {
    CycNum r = *this;
    r.c_[0] = Rational(1) / r.c_[0];
    return r;
  }
  // Extended Euclid in Q[x]: u*self + v*Phi_m = gcd = nonzero constant.
  const CycField& f = cyc_field(conductor_);
  Poly r0 = f.phi, r1(c_.begin(), c_.end());
  Poly s0{}, s1{Rational(1)};  // coefficients of self in the combination
  while (true) {
    poly_trim(r1);
    if (r1.empty())
      throw InternalError("cyclotomic inverse: unexpected zero remainder");
    if (r1.size() == 1) break;  // nonzero constant gcd reached
    Poly q, r2;
    poly_divmod(r0, r1, q, r2);
    Poly s2 = s0;  // s2 = s0 - q*s1
    {
      Poly qs = poly_mul(q, s1);
      if (qs.size() > s2.size()) s2.resize(qs.size(), Rational(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      poly_trim(s2);
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Rational scale = Rational(1) / r1[0];
  for (Rational& q : s1) q *= scale;
  return CycNum(conductor_, std::move(s1));
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum base = *this, acc = CycNum(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor_ == b.conductor_) return a.c_ == b.c_;
  int m = std::lcm(a.conductor_, b.conductor_);
  return a.embedded(m).c_ == b.embedded(m).c_;
}

std::string CycNum::str() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    const Rational& q = c_[k];
    if (skl::is_zero(q)) continue;
    std::string term;
    if (k == 0) {
      term = q.get_str();
    } else {
      std::string zpow = (k == 1) ? "z" : "z^" + std::to_string(k);
      if (q == 1) term = zpow;
      else if (q == -1) term = "-" + zpow;
      else if (sgn(q.get_num()) > 0 && q.get_den() == 1)
        term = q.get_str() + "*" + zpow;
      else
        term = "(" + q.get_str() + ")*" + zpow;
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

// ------------------------------ parser -------------------------------------

namespace {

// Recursive-descent grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+') factor | atom ('^' integer)?
//   atom   := integer | 'z' | '(' expr ')'
struct CycParser {
  const std::string& s;
  size_t pos = 0;
  int conductor;

  explicit CycParser(const std::string& text, int m) : s(text), conductor(m) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  CycNum parse() {
    CycNum v = expr();
    skip_ws();
    if (pos != s.size())
      throw ParseError("trailing junk in scalar '" + s + "' at offset " +
                       std::to_string(pos));
    // A purely rational expression comes out at conductor 1; lift it so the
    // parsed value always lives in the field the caller named.
    return v.embedded(conductor);
  }

  CycNum expr() {
    CycNum v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  CycNum term() {
    CycNum v = factor();
    while (true) {
      if (eat('*')) v *= factor();
      else if (eat('/')) {
        CycNum d = factor();
        if (d.is_zero())
          throw ParseError("division by zero in scalar '" + s + "'");
        v /= d;
      } else {
        return v;
      }
    }
  }

  CycNum factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    CycNum v = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer();
      v = v.pow(neg ? -e : e);
    }
    return v;
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos)
      throw ParseError("expected integer in scalar '" + s + "' at offset " +
                       std::to_string(start));
    return std::stol(s.substr(start, pos - start));
  }

  CycNum atom() {
    skip_ws();
    if (pos >= s.size())
      throw ParseError("unexpected end of scalar '" + s + "'");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      CycNum v = expr();
      if (!eat(')'))
        throw ParseError("missing ')' in scalar '" + s + "'");
      return v;
    }
    if (c == 'z') {
      ++pos;
      return CycNum::zeta(conductor);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return CycNum(Rational(integer()));
    throw ParseError("bad character '" + std::string(1, c) + "' in scalar '" +
                     s + "'");
  }
};

}  // namespace

CycNum parse_cyc(const std::string& text, int conductor) {
  CycParser p(text, conductor);
  return p.parse();
}

}  // namespace skl

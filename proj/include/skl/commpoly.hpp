#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>

#include "skl/cyclotomic.hpp"
#include "skl/errors.hpp"

namespace skl {

// Exponent vector of a monomial in the four commuting variables
// (z1, z2, z3, g), in that slot order.
using CMono = std::array<int, 4>;

inline const std::array<std::string, 4> kZVarNames = {"z1", "z2", "z3", "g"};
inline const std::array<std::string, 4> kUVarNames = {"u1", "u2", "u3", "g"};

// Commutative polynomial over the cyclotomic field in z1, z2, z3, g.
// Monomials live in a map, so the representation is canonical and the
// iteration order deterministic.  The same container doubles as a
// polynomial in u1, u2, u3 (slot 3 unused) for the Veronese data.
class CommPoly {
public:
  using TermMap = std::map<CMono, CycNum>;

  CommPoly() = default;

  static CommPoly term(const CMono& m, CycNum c) {
    CommPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
    return p;
  }
  static CommPoly variable(int i) {
    CMono m = {0, 0, 0, 0};
    m[i] = 1;
    return term(m, CycNum(1));
  }
  static CommPoly constant(CycNum c) { return term({0, 0, 0, 0}, std::move(c)); }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  CycNum coeff(const CMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CycNum(0) : it->second;
  }

  void add_term(const CMono& m, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CommPoly operator-() const {
    CommPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  CommPoly& operator+=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }

  friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
    CommPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        CMono m = {ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
        r.add_term(m, ca * cb);
      }
    return r;
  }

  CommPoly scaled(const CycNum& s) const {
    CommPoly r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  CommPoly pow(int e) const {
    CommPoly acc = constant(CycNum(1));
    for (int i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
  }

  friend bool operator==(const CommPoly& a, const CommPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const CommPoly& a, const CommPoly& b) {
    return !(a == b);
  }

  CommPoly partial(int var) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      CMono d = m;
      d[var] -= 1;
      r.add_term(d, c * CycNum(m[var]));
    }
    return r;
  }

  CycNum eval(const std::array<CycNum, 4>& v) const {
    CycNum acc(0);
    for (const auto& [m, c] : terms_) {
      CycNum t = c;
      for (int i = 0; i < 4; ++i)
        if (m[i] > 0) t *= v[i].pow(m[i]);
      acc += t;
    }
    return acc;
  }

  // Substitutes each variable by a polynomial.
  CommPoly substituted(const std::array<CommPoly, 4>& images) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      CommPoly t = constant(c);
      for (int i = 0; i < 4; ++i)
        if (m[i] > 0) t = t * images[i].pow(m[i]);
      r += t;
    }
    return r;
  }

  // Degree under the grading deg z_i = n, deg g = 3; -1 for zero.
  int weighted_degree(int n) const {
    int d = -1;
    for (const auto& [m, c] : terms_)
      d = std::max(d, n * (m[0] + m[1] + m[2]) + 3 * m[3]);
    return d;
  }
  bool is_weighted_homogeneous(int n) const {
    if (terms_.empty()) return true;
    int d = -2;
    for (const auto& [m, c] : terms_) {
      int w = n * (m[0] + m[1] + m[2]) + 3 * m[3];
      if (d == -2) d = w;
      else if (w != d) return false;
    }
    return true;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  // Coefficient of g^k, as a polynomial in z1, z2, z3 only.
  CommPoly g_coefficient(int k) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      if (m[3] != k) continue;
      r.add_term({m[0], m[1], m[2], 0}, c);
    }
    return r;
  }

  // z1 -> z2 -> z3 -> z1, g fixed.
  CommPoly cycled() const {
    CommPoly r;
    for (const auto& [m, c] : terms_) r.add_term({m[2], m[0], m[1], m[3]}, c);
    return r;
  }

  // The dilation substitution z_i -> beta^n z_i, g -> beta^3 g.
  CommPoly dilated(const CycNum& beta, int n) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      long e = static_cast<long>(n) * (m[0] + m[1] + m[2]) + 3L * m[3];
      r.add_term(m, c * beta.pow(e));
    }
    return r;
  }

  // Remainder of division by a polynomial monic in g (the coefficient of
  // its top g-power must be the constant 1); this is how membership in the
  // principal ideal (F) is decided.
  CommPoly reduced_mod(const CommPoly& f) const {
    int n = f.degree_in(3);
    if (n < 0 || f.g_coefficient(n) != constant(CycNum(1)))
      throw DomainError("reduced_mod: modulus is not monic in g");
    CommPoly tail = f;
    for (auto it = tail.terms_.begin(); it != tail.terms_.end();) {
      if (it->first[3] == n) it = tail.terms_.erase(it);
      else ++it;
    }
    CommPoly r = *this;
    for (int d = r.degree_in(3); d >= n; d = r.degree_in(3)) {
      CommPoly block;  // coefficient of g^d, shifted to g^{d-n}
      for (const auto& [m, c] : r.terms_)
        if (m[3] == d) block.add_term({m[0], m[1], m[2], d - n}, c);
      // r -= block * (g^n + tail) ; the g^n part cancels the block exactly
      for (const auto& [m, c] : block.terms_) r.add_term({m[0], m[1], m[2], d}, -c);
      r -= block * tail;
    }
    return r;
  }

  std::string str(const std::array<std::string, 4>& names = kZVarNames) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string mono;
      for (int i = 0; i < 4; ++i) {
        int e = it->first[i];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string cs = it->second.str();
      std::string term;
      if (mono.empty()) term = "(" + cs + ")";
      else if (cs == "1") term = mono;
      else if (cs == "-1") term = "-" + mono;
      else term = "(" + cs + ")*" + mono;
      if (!first) out << " + ";
      out << term;
      first = false;
    }
    return out.str();
  }

private:
  TermMap terms_;
};

}  // namespace skl

#pragma once

#include <array>
#include <map>
#include <sstream>
#include <vector>

#include "skl/word.hpp"

namespace skl {

// Dispatches to the scalar type's own zero test from inside class scopes
// where a member named is_zero would otherwise shadow it.
template <class T>
inline bool coeff_is_zero(const T& v) {
  return is_zero(v);
}

// Noncommutative polynomial over scalar ring S in the generators x, y, z.
// Terms are kept in a deglex-ordered map with no zero coefficients, so the
// representation is canonical and iteration order deterministic.
template <class S>
class NCPoly {
public:
  using TermMap = std::map<Word, S, DegLexLess>;

  NCPoly() = default;

  static NCPoly term(Word w, S coeff) {
    NCPoly p;
    if (!coeff_is_zero(coeff)) p.terms_.emplace(std::move(w), std::move(coeff));
    return p;
  }
  static NCPoly generator(int i) { return term(Word(1, kLetters[i]), S(1)); }
  static NCPoly constant(S v) { return term(Word(), std::move(v)); }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Max word length; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    size_t d = terms_.begin()->first.size();
    return terms_.rbegin()->first.size() == d;
  }
  // Deglex-largest term (requires nonzero).
  const std::pair<const Word, S>& leading() const {
    if (terms_.empty()) throw InternalError("leading() of zero NCPoly");
    return *terms_.rbegin();
  }
  S coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S(0) : it->second;
  }

  // Terms of word length exactly d.
  NCPoly component(int d) const {
    NCPoly r;
    for (const auto& [w, c] : terms_)
      if (static_cast<int>(w.size()) == d) r.terms_.emplace(w, c);
    return r;
  }

  void add_term(const Word& w, const S& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

  NCPoly scaled(const S& s) const {
    NCPoly r;
    if (coeff_is_zero(s)) return r;
    for (const auto& [w, c] : terms_) {
      S v = c * s;
      if (!coeff_is_zero(v)) r.terms_.emplace(w, std::move(v));
    }
    return r;
  }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add_term(wa + wb, ca * cb);
    return r;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) {
    return !(a == b);
  }

  NCPoly pow(int e) const {
    NCPoly acc = constant(S(1));
    for (int i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
  }

  friend NCPoly commutator(const NCPoly& a, const NCPoly& b) {
    return a * b - b * a;
  }

  // Applies a scalar-ring map coefficient-wise (e.g. hbar |-> 0 or an
  // embedding); F: S -> T.
  template <class T, class F>
  NCPoly<T> map_coeffs(F&& f) const {
    NCPoly<T> r;
    for (const auto& [w, c] : terms_) r.add_term(w, f(c));
    return r;
  }

  // Substitutes generator i by images[i]; used for linear changes of basis
  // and Heisenberg-group actions.
  NCPoly substituted(const std::array<NCPoly, 3>& images) const {
    NCPoly r;
    for (const auto& [w, c] : terms_) {
      NCPoly prod = constant(S(1));
      for (char ch : w) prod = prod * images[letter_index(ch)];
      r += prod.scaled(c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // print deglex-descending, matching the "leading term first" convention
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string cs = scalar_str(it->second);
      std::string word = it->first.empty() ? "1" : it->first;
      std::string term;
      if (it->first.empty()) term = "(" + cs + ")";
      else if (cs == "1") term = word;
      else if (cs == "-1") term = "-" + word;
      else term = "(" + cs + ")*" + word;
      if (first) {
        out << term;
        first = false;
      } else if (term[0] == '-') {
        out << " - " << term.substr(1);
      } else {
        out << " + " << term;
      }
    }
    return out.str();
  }

private:
  static std::string scalar_str(const S& s) { return s.str(); }

  TermMap terms_;
};

}  // namespace skl

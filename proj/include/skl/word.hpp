#pragma once

#include <string>

#include "skl/errors.hpp"
#include "skl/rational.hpp"

namespace skl {

// A word in the free monoid on x, y, z, stored as a string over 'x','y','z'
// (which sort in that order, so plain string comparison is the lexicographic
// tie-break).  The empty word is the monoid identity.
using Word = std::string;

inline constexpr char kLetters[3] = {'x', 'y', 'z'};

inline int letter_index(char c) {
  switch (c) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': return 2;
    default:
      throw DomainError(std::string("bad generator letter '") + c + "'");
  }
}

inline void check_word(const Word& w) {
  for (char c : w) letter_index(c);
}

// Degree-lexicographic order with x < y < z: first by length, then lex.
inline bool deglex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    return deglex_less(a, b);
  }
};

}  // namespace skl

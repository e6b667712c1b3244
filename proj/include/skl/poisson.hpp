#pragma once

#include <array>
#include <utility>
#include <vector>

#include "skl/commpoly.hpp"

namespace skl {

// Poisson structure on k[z1,z2,z3,g] determined by a single relation F:
// the three independent brackets are the cyclic partials of F and the last
// variable g is a Casimir (brackets with it vanish identically).
struct PoissonStructure {
  CommPoly F;
  int n = 0;                      // weight of each z_i (g has weight 3)
  std::array<CommPoly, 3> br;     // {z1,z2}, {z2,z3}, {z3,z1}
};

inline PoissonStructure bracket_from_F(const CommPoly& F, int n) {
  PoissonStructure ps;
  ps.F = F;
  ps.n = n;
  ps.br = {F.partial(2), F.partial(0), F.partial(1)};
  return ps;
}

// Biderivation extension: {p,q} = sum over variable pairs of the structure
// brackets times the antisymmetrized partials.  Partials in g never
// contribute, which is exactly the statement that g is a Casimir.
inline CommPoly poisson_bracket(const PoissonStructure& ps, const CommPoly& p,
                                const CommPoly& q) {
  std::array<CommPoly, 3> dp = {p.partial(0), p.partial(1), p.partial(2)};
  std::array<CommPoly, 3> dq = {q.partial(0), q.partial(1), q.partial(2)};
  CommPoly out;
  out += ps.br[0] * (dp[0] * dq[1] - dp[1] * dq[0]);
  out += ps.br[1] * (dp[1] * dq[2] - dp[2] * dq[1]);
  out += ps.br[2] * (dp[2] * dq[0] - dp[0] * dq[2]);
  return out;
}

// Cyclic Jacobi sums for the four generator triples (z1,z2,z3) and the three
// triples containing g, reduced modulo F.  Every entry must be zero for a
// genuine Poisson bracket; nonzero entries are returned verbatim so a failure
// carries its own witness.
inline std::vector<CommPoly> jacobi_residues(const PoissonStructure& ps) {
  auto jac = [&](const CommPoly& p, const CommPoly& q, const CommPoly& r) {
    return poisson_bracket(ps, poisson_bracket(ps, p, q), r) +
           poisson_bracket(ps, poisson_bracket(ps, q, r), p) +
           poisson_bracket(ps, poisson_bracket(ps, r, p), q);
  };
  const CommPoly z1 = CommPoly::variable(0);
  const CommPoly z2 = CommPoly::variable(1);
  const CommPoly z3 = CommPoly::variable(2);
  const CommPoly g = CommPoly::variable(3);
  std::vector<CommPoly> out;
  out.push_back(jac(z1, z2, z3).reduced_mod(ps.F));
  out.push_back(jac(z1, z2, g).reduced_mod(ps.F));
  out.push_back(jac(z2, z3, g).reduced_mod(ps.F));
  out.push_back(jac(z3, z1, g).reduced_mod(ps.F));
  return out;
}

// {p*q, r} - {p,r}*q - p*{q,r}, reduced modulo F.  Zero iff the bracket acts
// as a derivation in each slot on this triple.
inline CommPoly leibniz_residue(const PoissonStructure& ps, const CommPoly& p,
                                const CommPoly& q, const CommPoly& r) {
  CommPoly res = poisson_bracket(ps, p * q, r) -
                 poisson_bracket(ps, p, r) * q - p * poisson_bracket(ps, q, r);
  return res.reduced_mod(ps.F);
}

// Integer-scaled weighted Euler identity: a polynomial of uniform weighted
// degree 3n (weights n,n,n,3) satisfies n*(z1*F_1 + z2*F_2 + z3*F_3) +
// 3*g*F_g = 3n*F, so this residue vanishes exactly.
inline CommPoly weighted_euler_residue(const CommPoly& F, int n) {
  CommPoly acc;
  for (int i = 0; i < 3; ++i) {
    acc += (CommPoly::variable(i) * F.partial(i)).scaled(CycNum(n));
  }
  acc += (CommPoly::variable(3) * F.partial(3)).scaled(CycNum(3));
  acc -= F.scaled(CycNum(3 * n));
  return acc;
}

}  // namespace skl

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skl/center.hpp"
#include "skl/hbar.hpp"
#include "skl/poisson.hpp"

namespace skl {

// Deformation direction for the parameter triple: (a,b,c) moves along
// (a + hbar*da, b + hbar*db, c + hbar*dc).
struct Direction {
  CycNum da, db, dc;

  static Direction parse(const std::string& text, int conductor);  // "da,db,dc"
  bool is_zero() const { return da.is_zero() && db.is_zero() && dc.is_zero(); }
  std::string str() const;
};

// Samples integer steps d = 1..samples along the direction and reports
// whether some sampled triple is valid with automorphism order not dividing
// n (order above the cap counts as not dividing).  Throws DomainError for
// the zero direction.
bool check_direction(const Params& pr, const Direction& dir, int n,
                     int order_cap = 12, int samples = 8);

// Degreewise basis of the span of word classes inside the deformed algebra
// over the field k(zeta)(hbar), as a free module over the subring of
// fractions regular at hbar = 0.  The deformed algebra can acquire torsion
// against the generic monomial basis (border resolutions with poles at
// hbar = 0), so hbar-divisibility and evaluation at hbar = 0 are only
// meaningful relative to this lattice: valuation(v) is the largest k with
// v in hbar^k * lattice, and theta(v, N) is the class of v / hbar^N at
// hbar = 0, expressed in the undeformed algebra.  Each lattice basis vector
// carries its hbar = 0 class, maintained through the elimination, which
// realizes the quotient map without ever materializing torsion submodules.
class HbarLattice {
public:
  HbarLattice() = default;
  HbarLattice(const RewriteSystem<HbarRat>& rs,
              const RewriteSystem<CycNum>& rs0);

  int valuation(const GradedVec<HbarRat>& v) const;
  NCPoly<CycNum> theta(const GradedVec<HbarRat>& v, int level) const;

private:
  struct Degree {
    // column-echelon over the valuation ring: pivot of cols[r] is at row r
    // with entry hbar^k for some k >= 0
    std::vector<std::vector<HbarRat>> cols;
    std::vector<std::vector<CycNum>> image0;  // hbar = 0 classes, undeformed basis
    std::vector<Word> words;                  // undeformed basis words
  };
  std::vector<Degree> degs_;
};

// The deformed algebra: parameters a + hbar*da etc., rewrite tables up to
// degree 2n for both the deformed and the undeformed scalars, the word-span
// lattice tying them together, the images of the chosen degree-1 basis, and
// the degree-3 central element in the same normalization the presentation
// uses.  Deformed elimination runs over the full fraction field
// k(zeta)(hbar) so pivoting is unrestricted.
struct HbarAlgebra {
  CenterPresentation center;
  Direction dir;
  bool direction_generic = false;
  std::array<HbarScalar, 3> params_h;  // a + hbar*da etc., hbar-regular
  RewriteSystem<HbarRat> rs;           // deformed, cap 2n
  RewriteSystem<CycNum> rs0;           // undeformed, cap 2n
  HbarLattice lattice;
  std::array<NCPoly<HbarRat>, 3> xt;   // basis forms, embedded coefficients
  NCPoly<HbarRat> gt;                  // deformed degree-3 central element
};

HbarAlgebra make_hbar_algebra(const CenterPresentation& cp,
                              const Direction& dir, int order_cap = 12);

// A section of the hbar = 0 quotient map on the four central generators:
// evaluating every coefficient at hbar = 0 recovers z1, z2, z3, g.
struct Section {
  std::array<NCPoly<HbarRat>, 3> z;
  NCPoly<HbarRat> g;
};

// The obvious section: z_i |-> xt_i^n + sum_j c_j gt^j xt_i^(n-3j) with the
// undeformed correction constants c_j, and g |-> gt.
Section naive_section(const HbarAlgebra& alg);

// Minimal hbar-adic valuation of nf([s, w]) over the twelve pairs s in
// {z1, z2, z3, g} (section images) and w in {x, y, z}.  kValInfinity when
// every commutator vanishes identically.
int commutator_level(const HbarAlgebra& alg, const Section& sec);

// d[s][w] = value at hbar = 0 of nf([section(s), w]) / hbar^N; row 3 is g.
struct DerivationTable {
  int level = 0;
  std::array<std::array<NCPoly<CycNum>, 3>, 4> d;
};

DerivationTable special_derivation(const HbarAlgebra& alg, const Section& sec,
                                   int level);

// theta(nf([s, lift]) / hbar^level) for an arbitrary lift of an algebra
// element; used by the derivation table and by lift-independence tests.
NCPoly<CycNum> apply_derivation(const HbarAlgebra& alg,
                                const NCPoly<HbarRat>& s,
                                const NCPoly<HbarRat>& lift, int level);

// Expresses a central element of plain degree `wdeg` in the weighted
// monomial basis z1^l1 z2^l2 z3^l3 g^l0 (weights n,n,n,3); throws
// StructureError when the element does not lie in that span.
CommPoly central_coordinates(const HbarAlgebra& alg, const NCPoly<CycNum>& p,
                             int wdeg);

// Induced brackets {z1,z2}, {z2,z3}, {z3,z1} at the given level: value at
// hbar = 0 of nf([section(z_i), section(z_j)]) / hbar^N, written in the
// weighted monomial basis.
std::array<CommPoly, 3> induced_brackets(const HbarAlgebra& alg,
                                         const Section& sec, int level);

struct PoissonOrderResult {
  int level = 0;
  int iterations = 0;  // section corrections applied
  std::array<CommPoly, 3> brackets;
  DerivationTable derivations;
  Section section;
};

// Runs the level computation on the naive section and, while the three
// induced brackets all vanish, corrects the section inside the prescribed
// family z_i -> z_i - hbar^N sum_j c'_j gt^j xt_i^(n-3j), which must raise
// the level strictly.  Throws StructureError when no correction freedom is
// left and CapExceededError when the level passes level_cap.
PoissonOrderResult maximize_level(const HbarAlgebra& alg, int level_cap = 25);

// Single-scalar comparison of an induced bracket triple against the cyclic
// partials of F: matches iff brackets == eta * (F_z3, F_z1, F_z2) mod F for
// one shared eta.
struct EtaReport {
  bool matches = false;
  CycNum eta;
  int witness_pair = -1;   // first pair violating the shared scaling
  CommPoly residual;       // bracket - eta * partial, reduced mod F
};

EtaReport compare_to_dF(const std::array<CommPoly, 3>& brackets,
                        const CommPoly& F, int n);

}  // namespace skl

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skl/center.hpp"
#include "skl/curve.hpp"
#include "skl/linalg.hpp"
#include "skl/ncpoly.hpp"
#include "skl/strata.hpp"

namespace skl {

// A finite-dimensional module of the quadratic algebra, given by the images
// of three degree-one generators.  The images may be stated on the standard
// generators x, y, z (tag "standard") or on a cyclic basis (tag "good"); in
// the second case basis_matrix row i holds the coordinates of the i-th
// stated generator in (x, y, z), and the standard images are recovered
// through the inverse change of basis.
struct MatrixRep {
  int dim = 0;
  std::string basis = "standard";
  std::array<Matrix<CycNum>, 3> images;
  std::optional<Matrix<CycNum>> basis_matrix;

  static MatrixRep standard(std::array<Matrix<CycNum>, 3> images);
  static MatrixRep in_basis(std::array<Matrix<CycNum>, 3> images,
                            Matrix<CycNum> basis_matrix);

  // Shape checks: three square matrices of the stated dimension, and a 3x3
  // basis matrix exactly when the tag says "good".
  void validate() const;
};

// Images of x, y, z (applies the inverse basis matrix when needed).
std::array<Matrix<CycNum>, 3> standard_images(const MatrixRep& rep);

// Value of a noncommutative polynomial on the given generator images.
Matrix<CycNum> eval_on_images(const NCPoly<CycNum>& p,
                              const std::array<Matrix<CycNum>, 3>& imgs,
                              int dim);

// The three defining relations a yz + b zy + c x^2 (cyclic) as polynomials.
std::array<NCPoly<CycNum>, 3> defining_relations(const Params& pr);

struct RelationCheck {
  bool ok = false;
  std::array<Matrix<CycNum>, 3> residues;
};

// Evaluates the three defining relations on the standard images; ok exactly
// when every residue matrix vanishes.
RelationCheck verify_relations(const MatrixRep& rep, const Params& pr);

// The scalars by which z1, z2, z3, g act.  Meaningful once the relations
// hold; throws DomainError when a central generator acts by a non-scalar
// matrix.
YPoint central_character(const MatrixRep& rep, const CenterPresentation& cp);

// Dimension of the linear span of all words in the generator images (the
// image of the algebra), computed by closing the span under right
// multiplication by the generators until stable.
int image_span_dimension(const MatrixRep& rep);

// A module is irreducible exactly when its word images span the full d x d
// matrix algebra.
bool burnside_irreducible(const MatrixRep& rep);

// Scales the degree-one images by a nonzero scalar.  A degree-d central
// element then picks up lambda^d on the character: the z_i coordinates
// scale by lambda^n and the g coordinate by lambda^3.
MatrixRep twist(const MatrixRep& rep, const CycNum& lambda);

// Trace comparison over all words up to the stabilization length of the
// joint word span.  Equal trace functionals decide isomorphism for modules
// with semisimple image algebra (in particular irreducible ones); modules
// of different dimensions are never isomorphic.
bool iso_test(const MatrixRep& r1, const MatrixRep& r2);

// Independent cross-check for small dimension: solves T phi1 = phi2 T on
// the generator images and reports whether the intertwiner space contains
// an invertible matrix (searched over kernel basis vectors and their pair
// sums, which is exhaustive when the intertwiner space has dimension <= 1,
// the case of irreducible inputs).
bool conjugator_search(const MatrixRep& r1, const MatrixRep& r2);

// Full verification record for one module.
struct RepReport {
  bool relations_ok = false;
  YPoint character;         // origin until the relations hold
  int span_dimension = 0;
  bool irreducible = false;
  StratumTag stratum = StratumTag::kY1;
  // Irreducible with one of the dimensions the character's stratum
  // prescribes for irreducible modules.
  bool stratum_consistent = false;
};

RepReport analyze_rep(const MatrixRep& rep, const CenterPresentation& cp);

// Profile check for a family sharing one central character: the multiset of
// dimensions of the pairwise non-isomorphic members must match the expected
// profile at that point, as must the sum of squared dimensions.
struct ProfileCheck {
  bool ok = false;
  YPoint character;
  std::vector<int> class_dims;  // sorted, one entry per isomorphism class
  std::vector<int> expected;    // sorted expected profile at the character
  long sum_squares = 0;
  long expected_sum_squares = 0;
};

ProfileCheck profile_consistency(const std::vector<MatrixRep>& reps,
                                 const CenterPresentation& cp);

}  // namespace skl

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skl/commpoly.hpp"
#include "skl/curve.hpp"
#include "skl/linalg.hpp"
#include "skl/ncpoly.hpp"
#include "skl/rewrite.hpp"

namespace skl {

// Element of the order-27 Heisenberg group acting on span{x, y, z},
// written rho1^e1 * rho2^e2 * rho3^e3 with
//   rho1 = zeta * id,   rho2 = diag(1, zeta, zeta^2),   rho3: (x,y,z) -> (y,z,x)
// for zeta a primitive cube root of unity.  Composition uses the
// commutation rule rho3 rho2 = zeta^2 rho2 rho3 and matches the product of
// the induced matrices.
struct H3Element {
  int e1 = 0, e2 = 0, e3 = 0;  // exponents mod 3

  static H3Element make(int e1, int e2, int e3) {
    auto m = [](int v) { return ((v % 3) + 3) % 3; };
    return {m(e1), m(e2), m(e3)};
  }

  // this applied after o (matrix product order).
  H3Element composed(const H3Element& o) const {
    return make(e1 + o.e1 + 2 * e3 * o.e2, e2 + o.e2, e3 + o.e3);
  }

  // Columns are the images of the generators x, y, z.
  Matrix<CycNum> matrix() const;

  // The three generator images, for substitution into NCPoly.
  std::array<NCPoly<CycNum>, 3> generator_images() const;

  bool operator==(const H3Element& o) const {
    return e1 == o.e1 && e2 == o.e2 && e3 == o.e3;
  }
  bool operator!=(const H3Element& o) const { return !(*this == o); }

  std::string str() const;
};

// Induced map on points of the projective plane: coordinates pick up the
// transpose of the generator-image matrix (scalars act trivially).
ProjPoint h3_point_image(const H3Element& h, const ProjPoint& p);

// A cyclic basis of the degree-1 component: three independent linear forms
// permuted by a Heisenberg element tau, tau(x_i) = x_{i+1} exactly.
struct GoodBasis {
  std::array<NCPoly<CycNum>, 3> x;
  H3Element tau;
  Matrix<CycNum> coeff_matrix;  // row i = coordinates of x[i] in (x, y, z)
  int family = 0;               // 1..4, which candidate family produced it
};

// The four candidate basis families, in the fixed trial order.
std::array<std::array<NCPoly<CycNum>, 3>, 4> basis_families();

// Searches the 27 Heisenberg elements for one cycling the three forms;
// rescales the forms when the cycle only holds projectively.  Throws
// StructureError when no element works.
H3Element find_tau(std::array<NCPoly<CycNum>, 3>& forms);

// For 3 | n: the class modulo <rho1> of the Heisenberg element whose point
// map is translation by (n/3) * [a:b:c]; returned with e1 = 0.
H3Element identify_rho(const Params& pr, int n);

// The degree-3 central element in its parameter-symmetric raw form
//   c(c^3-b^3) y^3 + b(c^3-a^3) yxz + a(b^3-c^3) xyz + c(a^3-c^3) x^3.
NCPoly<CycNum> central_g(const Params& pr);

// The raw element divided by (c^3 - a^3) when that scalar is nonzero (the
// normalization the degree-2 and degree-6 worked examples use); the raw
// element otherwise.
NCPoly<CycNum> presentation_g(const Params& pr);

struct CentralZResult {
  std::array<NCPoly<CycNum>, 3> z;  // normal forms, degree n
  std::vector<CycNum> cs;           // correction coefficients c_j, j = 1..m
};

// Solves for the shared correction coefficients c_j making
//   z_i = x_i^n + sum_j c_j g^j x_i^{n-3j}
// central (nine generator commutators must vanish).  Returns nullopt when
// the linear system is inconsistent for this basis (the caller then tries
// the next candidate family); throws StructureError when the solution is
// not unique.
std::optional<CentralZResult> central_z(const RewriteSystem<CycNum>& rs,
                                        const GoodBasis& basis,
                                        const NCPoly<CycNum>& g, int n);

// All monomials z1^l1 z2^l2 z3^l3 g^l0 of weighted degree d (weights
// deg z = n, deg g = 3), in deterministic order.
std::vector<CMono> weighted_monomials(int n, int d);

// The unique (asserted) linear relation among the weighted-degree-3n
// monomials in z1, z2, z3, g, normalized so the coefficient of g^n is 1.
// Throws StructureError when the kernel dimension differs from 1.
CommPoly central_relation_F(const RewriteSystem<CycNum>& rs,
                            const std::array<NCPoly<CycNum>, 3>& z,
                            const NCPoly<CycNum>& g, int n);

struct StructuralData {
  bool has_ell = false;  // true exactly when 3 | n
  CommPoly ell;          // linear form, = alpha*(z1+z2+z3)
  CycNum alpha;
  CommPoly Phi;          // cubic in z1, z2, z3
};

// Decomposes a normalized F as g^n + Phi when (n,3) = 1, or as
// g^n + 3*ell*g^{2n/3} + 3*ell^2*g^{n/3} + Phi when 3 | n, checking every
// structural constraint exactly; throws StructureError naming the failing
// coefficient.
StructuralData extract_structural_data(const CommPoly& F, int n);

struct VeroneseData {
  std::array<NCPoly<CycNum>, 3> u;  // u_i = x_i^{n/3}, normal forms
  CommPoly f3;  // cubic with f3(u) + g^{n/3} = 0; slots are u1, u2, u3
};

// For 3 | n: computes u_i and solves for the unique cubic f3; throws
// StructureError when the degree-n kernel structure is violated.
VeroneseData veronese_data(const RewriteSystem<CycNum>& rs,
                           const GoodBasis& basis, const NCPoly<CycNum>& g,
                           int n);

// Certifies by normal-form reduction that g^s + f3(u) and every z_i - u_i^3
// vanish in the algebra; vacuously true when (n,3) = 1.
bool veronese_check(const RewriteSystem<CycNum>& rs,
                    const std::array<NCPoly<CycNum>, 3>& u, const CommPoly& f3,
                    const NCPoly<CycNum>& g,
                    const std::array<NCPoly<CycNum>, 3>& z, int n);

// Everything the downstream geometry and specialization need: the chosen
// basis, the central generators, the relation F and its structural pieces.
struct CenterPresentation {
  Params params;
  int n = 0;
  NCPoly<CycNum> g;  // presentation normalization
  GoodBasis basis;
  std::array<NCPoly<CycNum>, 3> z;
  std::vector<CycNum> cs;
  CommPoly F;
  StructuralData structure;
  std::optional<VeroneseData> veronese;  // present exactly when 3 | n
};

struct CenterOptions {
  int order_cap = 12;
  int n_cap = 6;  // rewriting at degree 3n is the cost driver
};

// Full pipeline: PI degree, good basis (with candidate retry when
// (n,3) = 1), central generators, relation, structural data, Veronese
// certificates.
CenterPresentation compute_center(const Params& pr,
                                  const CenterOptions& opts = {});

// Convenience wrapper returning just the basis the pipeline settles on.
GoodBasis good_basis(const Params& pr, const CenterOptions& opts = {});

}  // namespace skl

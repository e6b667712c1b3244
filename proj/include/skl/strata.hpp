#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "skl/center.hpp"
#include "skl/commpoly.hpp"

namespace skl {

// A point of the affine variety cut out by the center relation, in the
// coordinates (z1, z2, z3, g).
struct YPoint {
  std::array<CycNum, 4> y;

  static YPoint make(CycNum z1, CycNum z2, CycNum z3, CycNum g) {
    return YPoint{{std::move(z1), std::move(z2), std::move(z3), std::move(g)}};
  }
  static YPoint origin() { return YPoint{}; }
  // Comma-separated exact scalar expressions, e.g. "-1728,0,0,4".
  static YPoint parse(const std::string& text, int conductor);

  bool is_origin() const;
  const CycNum& g() const { return y[3]; }

  // z1 -> z2 -> z3 -> z1 on coordinates, matching the cyclic symmetry of
  // the center presentation; g fixed.
  YPoint cycled() const { return YPoint{{y[2], y[0], y[1], y[3]}}; }
  // (z_i, g) -> (beta^n z_i, beta^3 g).
  YPoint dilated(const CycNum& beta, int n) const;

  bool operator==(const YPoint& o) const { return y == o.y; }
  bool operator!=(const YPoint& o) const { return !(*this == o); }
  std::string str() const;
};

enum class StratumTag { kY1, kY2, kY3, kY4 };
std::string to_string(StratumTag tag);

// A stratum tag together with the symplectic-core descriptor of the point:
// either the full smooth part of its g-slice, or the point alone.
struct Stratum {
  StratumTag tag = StratumTag::kY1;
  bool singleton_core = false;
  CycNum gamma;  // slice value; meaningful for non-singleton cores
  std::string core_str() const;
};

// Exact membership in the variety of the center relation.
bool on_Y(const CenterPresentation& cp, const YPoint& p);

// True iff all four partials of the relation vanish at p (p must lie on the
// variety).  Cross-checked against the three-z-partial criterion, which
// must give the same answer on the variety; a disagreement throws
// StructureError.
bool singular_test(const CenterPresentation& cp, const YPoint& p);

// The three dilation-invariant curves g^{n/3} + alpha*z_i = 0,
// z_{i+1} = z_{i+2} = 0 that make up the singular locus when 3 | n.
struct CurveFamily {
  int n = 0;
  CycNum alpha;
  // The point of curve i (1-based) with g-coordinate gamma.
  YPoint at(int i, const CycNum& gamma) const;
};
CurveFamily curves_C(const CenterPresentation& cp);  // error when (n,3) = 1
// True iff p lies on curve i (1-based); false for every i when (n,3) = 1.
bool on_curve(const CenterPresentation& cp, int i, const YPoint& p);

// The partition of the variety: kY4 at the origin, kY3 on the punctured
// g = 0 slice, kY2 on the punctured singular curves (3 | n only), kY1
// elsewhere; includes the symplectic-core descriptor.
Stratum classify_stratum(const CenterPresentation& cp, const YPoint& p);

// True iff p is a smooth point of the variety; equivalently the stratum tag
// is kY1 or kY3.
bool azumaya_test(const CenterPresentation& cp, const YPoint& p);

// Singular points of the slice g = gamma: {origin} for gamma = 0, empty for
// gamma != 0 when (n,3) = 1, the three curve points when 3 | n.
std::vector<YPoint> slice_singulars(const CenterPresentation& cp,
                                    const CycNum& gamma);

// Dimensions of the pairwise non-isomorphic irreducible representations
// with central character p, as a sorted multiset: {n} on the smooth locus,
// {n/3, n/3, n/3} on the punctured curves, {1} at the origin.
std::vector<int> expected_irrep_profile(const CenterPresentation& cp,
                                        const YPoint& p);

enum class ZeroSetKind { kEmpty, kOrigin, kCurveUnion };
std::string to_string(ZeroSetKind kind);

// Zero set of the k-th discriminant ideal of the algebra over its center,
// for 1 <= k <= n^2: empty for k = 1; {origin} for k <= n^2 when (n,3) = 1
// or k <= n^2/3 when 3 | n; the curve union above n^2/3 when 3 | n.
ZeroSetKind discriminant_zero_set(const CenterPresentation& cp, long k);

// The z1*z2*z3 deficit of the structural cubic: Phi = ell^3 - mu*z1*z2*z3
// exactly (3 | n only); throws StructureError when the decomposition fails.
CycNum structural_mu(const CenterPresentation& cp);

// Exact sampler for smooth points with g != 0 off the singular curves.
// Every draw is verified on the variety before being returned.
YPoint sample_smooth_point(const CenterPresentation& cp, std::mt19937_64& rng);

// Exact sampler for nonzero points of the g = 0 slice.
YPoint sample_slice_zero_point(const CenterPresentation& cp,
                               std::mt19937_64& rng);

// Exact roots, within the rational subfield, of the univariate polynomial
// obtained by fixing z1, z2 and g in the center relation and leaving z3
// free.  Inputs must be rational; roots are returned sorted and distinct.
std::vector<CycNum> slice_cubic_roots(const CenterPresentation& cp,
                                      const CycNum& z1, const CycNum& z2,
                                      const CycNum& gamma);

// Deterministic SVG sketch of the slice structure of the variety: stacked
// g-slices, the singular curves when 3 | n, and a stratum legend.
std::string figure_svg(const CenterPresentation& cp);

}  // namespace skl

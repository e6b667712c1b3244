#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skl/cyclotomic.hpp"
#include "skl/linalg.hpp"

namespace skl {

// Parameter triple (a, b, c) of the quadratic algebra, held at a common
// cyclotomic conductor.  A triple is admissible when abc != 0, the three
// cubes a^3, b^3, c^3 are not all equal, and (3abc)^3 != (a^3+b^3+c^3)^3;
// the last condition is exactly smoothness of the associated plane cubic.
struct Params {
  CycNum a, b, c;

  static Params make(CycNum a, CycNum b, CycNum c);
  static Params parse(const std::string& text, int conductor);  // "a,b,c"

  int conductor() const { return a.conductor(); }
  CycNum abc() const { return a * b * c; }
  CycNum sum_cubes() const { return a.pow(3) + b.pow(3) + c.pow(3); }

  bool is_valid() const;
  void validate() const;  // throws DomainError with the failed condition

  std::string str() const;
};

// Point of the projective plane over the cyclotomic field, stored with the
// last nonzero coordinate scaled to 1 so representation is canonical.
class ProjPoint {
public:
  ProjPoint(CycNum v1, CycNum v2, CycNum v3);
  static ProjPoint parse(const std::string& text, int conductor);  // "[v1:v2:v3]"

  const CycNum& operator[](int i) const { return v_[i]; }
  const std::array<CycNum, 3>& coords() const { return v_; }

  bool operator==(const ProjPoint& o) const;
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }

  std::string str() const;

private:
  std::array<CycNum, 3> v_;
};

// Image of a point under an invertible linear change of coordinates.
ProjPoint apply_matrix(const Matrix<CycNum>& m, const ProjPoint& p);

// The cubic form whose zero locus is the degree-one truncation's point
// scheme: (abc)(v1^3+v2^3+v3^3) - (a^3+b^3+c^3) v1 v2 v3.
CycNum curve_form(const Params& pr, const ProjPoint& p);
bool on_curve(const Params& pr, const ProjPoint& p);

// The curve automorphism encoding the relations, as explicit quadrics:
//   [ac v2^2 - b^2 v1 v3 : bc v1^2 - a^2 v2 v3 : ab v3^2 - c^2 v1 v2].
// At the finitely many base points where all three quadrics vanish the map
// is evaluated instead as translation by the distinguished point [a:b:c]
// (the two descriptions agree on the curve).
ProjPoint sigma_apply(const Params& pr, const ProjPoint& p);

// Chord-and-tangent structure on the smooth cubic with origin [1:-1:0].
ProjPoint group_origin(const Params& pr);
ProjPoint translation_point(const Params& pr);  // [a:b:c]
ProjPoint third_intersection(const Params& pr, const ProjPoint& p,
                             const ProjPoint& q);
ProjPoint group_add(const Params& pr, const ProjPoint& p, const ProjPoint& q);
ProjPoint group_negate(const Params& pr, const ProjPoint& p);
ProjPoint group_multiple(const Params& pr, long k, const ProjPoint& p);

// Order of sigma (equivalently of [a:b:c] under the group law), computed two
// independent ways that are required to agree: by iterating the quadric map
// from the origin, and by group-law multiples of [a:b:c].  Throws
// CapExceededError when the order exceeds `order_cap`.
int sigma_order(const Params& pr, int order_cap);

// Deterministic pool of distinct points on the curve: the nine common
// inflection points of the pencil, multiples of [a:b:c], and their sums.
// Throws StructureError if fewer than `count` distinct points are found.
std::vector<ProjPoint> curve_point_pool(const Params& pr, int count);

}  // namespace skl

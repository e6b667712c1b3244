#include "skl/curve.hpp"

#include <numeric>

namespace skl {

namespace {

int common_conductor(std::initializer_list<const CycNum*> xs) {
  int m = 1;
  for (const CycNum* x : xs) m = std::lcm(m, x->conductor());
  return m;
}

}  // namespace

Params Params::make(CycNum a, CycNum b, CycNum c) {
  int m = common_conductor({&a, &b, &c});
  return Params{a.embedded(m), b.embedded(m), c.embedded(m)};
}

Params Params::parse(const std::string& text, int conductor) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw ParseError("expected three comma-separated values, got " +
                     std::to_string(parts.size()) + " in '" + text + "'");
  return make(parse_cyc(parts[0], conductor), parse_cyc(parts[1], conductor),
              parse_cyc(parts[2], conductor));
}

bool Params::is_valid() const {
  if (abc().is_zero()) return false;
  CycNum a3 = a.pow(3), b3 = b.pow(3), c3 = c.pow(3);
  if (a3 == b3 && b3 == c3) return false;
  CycNum lhs = (abc() * CycNum(3)).pow(3);
  CycNum rhs = sum_cubes().pow(3);
  return !(lhs == rhs);
}

void Params::validate() const {
  if (abc().is_zero())
    throw DomainError("parameter triple " + str() +
                      " rejected: a*b*c must be nonzero");
  CycNum a3 = a.pow(3), b3 = b.pow(3), c3 = c.pow(3);
  if (a3 == b3 && b3 == c3)
    throw DomainError("parameter triple " + str() +
                      " rejected: a^3 = b^3 = c^3 is excluded");
  if ((abc() * CycNum(3)).pow(3) == sum_cubes().pow(3))
    throw DomainError("parameter triple " + str() +
                      " rejected: (3abc)^3 = (a^3+b^3+c^3)^3 makes the "
                      "associated cubic singular");
}

std::string Params::str() const {
  return "(" + a.str() + ", " + b.str() + ", " + c.str() + ")";
}

ProjPoint::ProjPoint(CycNum v1, CycNum v2, CycNum v3) {
  int m = common_conductor({&v1, &v2, &v3});
  v_ = {v1.embedded(m), v2.embedded(m), v3.embedded(m)};
  int last = -1;
  for (int i = 2; i >= 0; --i)
    if (!v_[i].is_zero()) {
      last = i;
      break;
    }
  if (last < 0)
    throw DomainError("projective point needs a nonzero coordinate");
  CycNum inv = v_[last].inverse();
  for (auto& x : v_) x = x * inv;
}

ProjPoint ProjPoint::parse(const std::string& text, int conductor) {
  std::string body = text;
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']')
    body = body.substr(1, body.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : body) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw ParseError("expected [v1:v2:v3], got '" + text + "'");
  return ProjPoint(parse_cyc(parts[0], conductor),
                   parse_cyc(parts[1], conductor),
                   parse_cyc(parts[2], conductor));
}

bool ProjPoint::operator==(const ProjPoint& o) const {
  for (int i = 0; i < 3; ++i)
    if (!(v_[i] == o.v_[i])) return false;
  return true;
}

std::string ProjPoint::str() const {
  return "[" + v_[0].str() + ":" + v_[1].str() + ":" + v_[2].str() + "]";
}

ProjPoint apply_matrix(const Matrix<CycNum>& m, const ProjPoint& p) {
  if (m.rows() != 3 || m.cols() != 3)
    throw DomainError("apply_matrix expects a 3x3 matrix");
  std::array<CycNum, 3> w = {CycNum(0), CycNum(0), CycNum(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i] = w[i] + m.at(i, j) * p[j];
  return ProjPoint(w[0], w[1], w[2]);
}

CycNum curve_form(const Params& pr, const ProjPoint& p) {
  CycNum cubes = p[0].pow(3) + p[1].pow(3) + p[2].pow(3);
  return pr.abc() * cubes - pr.sum_cubes() * (p[0] * p[1] * p[2]);
}

bool on_curve(const Params& pr, const ProjPoint& p) {
  return curve_form(pr, p).is_zero();
}

ProjPoint group_origin(const Params&) {
  return ProjPoint(CycNum(1), CycNum(-1), CycNum(0));
}

ProjPoint translation_point(const Params& pr) {
  return ProjPoint(pr.a, pr.b, pr.c);
}

namespace {

// Coefficients of the binary cubic t |-> curve_form(s*p + t*q):
// c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3, computed exactly by evaluating the
// form at four parameter values and solving the Vandermonde system in closed
// form (values at t/s = 0, 1, -1, and s = 0).
struct BinaryCubic {
  CycNum c0, c1, c2, c3;
};

BinaryCubic pencil_cubic(const Params& pr, const std::array<CycNum, 3>& p,
                         const std::array<CycNum, 3>& q) {
  auto eval = [&](const CycNum& s, const CycNum& t) {
    std::array<CycNum, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = s * p[i] + t * q[i];
    CycNum cubes = v[0].pow(3) + v[1].pow(3) + v[2].pow(3);
    return pr.abc() * cubes - pr.sum_cubes() * (v[0] * v[1] * v[2]);
  };
  CycNum f0 = eval(CycNum(1), CycNum(0));   // c0
  CycNum f1 = eval(CycNum(1), CycNum(1));   // c0+c1+c2+c3
  CycNum fm = eval(CycNum(1), CycNum(-1));  // c0-c1+c2-c3
  CycNum fi = eval(CycNum(0), CycNum(1));   // c3
  CycNum half = CycNum(make_rational(1, 2));
  BinaryCubic bc;
  bc.c0 = f0;
  bc.c3 = fi;
  bc.c2 = (f1 + fm) * half - f0;
  bc.c1 = (f1 - fm) * half - fi;
  return bc;
}

// Third intersection of the line spanned by independent vectors p, q (both
// on the curve) with the curve, with multiplicity bookkeeping: since (1:0)
// and (0:1) are roots, the residual linear factor c1 s + c2 t locates it.
ProjPoint chord_third(const Params& pr, const std::array<CycNum, 3>& p,
                      const std::array<CycNum, 3>& q) {
  BinaryCubic bc = pencil_cubic(pr, p, q);
  if (!bc.c0.is_zero() || !bc.c3.is_zero())
    throw InternalError("chord_third: endpoints are not on the curve");
  if (bc.c1.is_zero() && bc.c2.is_zero())
    throw InternalError("chord_third: line lies inside the cubic (singular)");
  CycNum s = -bc.c2, t = bc.c1;
  std::array<CycNum, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = s * p[i] + t * q[i];
  return ProjPoint(r[0], r[1], r[2]);
}

// A direction vector spanning the tangent line at p together with p itself.
std::array<CycNum, 3> tangent_direction(const Params& pr, const ProjPoint& p) {
  // gradient of the cubic form at p
  CycNum three(3);
  std::array<CycNum, 3> grad;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    grad[i] = pr.abc() * three * p[i].pow(2) - pr.sum_cubes() * (p[j] * p[k]);
  }
  // two-dimensional solution space of grad . v = 0; pick a spanning pair and
  // return one not proportional to p
  std::array<std::array<CycNum, 3>, 3> cands = {{
      {grad[1], -grad[0], CycNum(0)},
      {grad[2], CycNum(0), -grad[0]},
      {CycNum(0), grad[2], -grad[1]},
  }};
  for (const auto& d : cands) {
    bool zero = d[0].is_zero() && d[1].is_zero() && d[2].is_zero();
    if (zero) continue;
    // proportional to p?  compare cross products
    bool prop = (d[0] * p[1] == d[1] * p[0]) && (d[0] * p[2] == d[2] * p[0]) &&
                (d[1] * p[2] == d[2] * p[1]);
    if (!prop) return d;
  }
  throw InternalError("tangent_direction: degenerate gradient at " + p.str());
}

ProjPoint tangent_third(const Params& pr, const ProjPoint& p) {
  std::array<CycNum, 3> d = tangent_direction(pr, p);
  BinaryCubic bc = pencil_cubic(pr, p.coords(), d);
  if (!bc.c0.is_zero())
    throw InternalError("tangent_third: point is not on the curve");
  if (!bc.c1.is_zero())
    throw InternalError("tangent_third: direction is not tangent at " + p.str());
  if (bc.c2.is_zero() && bc.c3.is_zero())
    throw InternalError("tangent_third: line lies inside the cubic (singular)");
  // cubic reduces to t^2 (c2 s + c3 t); at a flex (c2 = 0) the third
  // intersection is p itself and the formula below returns it
  CycNum s = -bc.c3, t = bc.c2;
  std::array<CycNum, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = s * p[i] + t * d[i];
  return ProjPoint(r[0], r[1], r[2]);
}

}  // namespace

ProjPoint third_intersection(const Params& pr, const ProjPoint& p,
                             const ProjPoint& q) {
  if (!on_curve(pr, p) || !on_curve(pr, q))
    throw DomainError("third_intersection requires points on the curve");
  if (p == q) return tangent_third(pr, p);
  return chord_third(pr, p.coords(), q.coords());
}

ProjPoint group_add(const Params& pr, const ProjPoint& p, const ProjPoint& q) {
  ProjPoint r = third_intersection(pr, p, q);
  return third_intersection(pr, r, group_origin(pr));
}

ProjPoint group_negate(const Params& pr, const ProjPoint& p) {
  ProjPoint o = group_origin(pr);
  ProjPoint oo = third_intersection(pr, o, o);
  return third_intersection(pr, p, oo);
}

ProjPoint group_multiple(const Params& pr, long k, const ProjPoint& p) {
  if (k < 0) return group_negate(pr, group_multiple(pr, -k, p));
  ProjPoint acc = group_origin(pr);
  for (long i = 0; i < k; ++i) acc = group_add(pr, acc, p);
  return acc;
}

ProjPoint sigma_apply(const Params& pr, const ProjPoint& p) {
  const CycNum &a = pr.a, &b = pr.b, &c = pr.c;
  CycNum w1 = a * c * p[1].pow(2) - b.pow(2) * (p[0] * p[2]);
  CycNum w2 = b * c * p[0].pow(2) - a.pow(2) * (p[1] * p[2]);
  CycNum w3 = a * b * p[2].pow(2) - c.pow(2) * (p[0] * p[1]);
  if (w1.is_zero() && w2.is_zero() && w3.is_zero()) {
    // base point of the quadric system: fall back to the translation
    // description, which is defined everywhere on the curve
    if (!on_curve(pr, p))
      throw DomainError("sigma is undefined at base point " + p.str() +
                        " off the curve");
    return group_add(pr, p, translation_point(pr));
  }
  return ProjPoint(w1, w2, w3);
}

int sigma_order(const Params& pr, int order_cap) {
  pr.validate();
  if (order_cap < 1) throw DomainError("order cap must be positive");
  ProjPoint o = group_origin(pr);
  ProjPoint t = translation_point(pr);
  // method 1: iterate the quadric map from the origin
  int order_iter = -1;
  ProjPoint cur = o;
  for (int k = 1; k <= order_cap; ++k) {
    cur = sigma_apply(pr, cur);
    if (cur == o) {
      order_iter = k;
      break;
    }
  }
  // method 2: group-law multiples of the translation point
  int order_mult = -1;
  ProjPoint acc = o;
  for (int k = 1; k <= order_cap; ++k) {
    acc = group_add(pr, acc, t);
    if (acc == o) {
      order_mult = k;
      break;
    }
  }
  if (order_iter != order_mult)
    throw InternalError("sigma order mismatch between iteration (" +
                        std::to_string(order_iter) + ") and multiples (" +
                        std::to_string(order_mult) + ")");
  if (order_iter < 0)
    throw CapExceededError("sigma order exceeds cap " +
                           std::to_string(order_cap) + " for params " +
                           pr.str());
  return order_iter;
}

std::vector<ProjPoint> curve_point_pool(const Params& pr, int count) {
  std::vector<ProjPoint> pool;
  auto push = [&](const ProjPoint& p) {
    for (const ProjPoint& q : pool)
      if (q == p) return;
    pool.push_back(p);
  };
  int m = std::lcm(pr.conductor(), 3);
  CycNum omega = CycNum::zeta(m).pow(m / 3);
  std::array<CycNum, 3> roots = {CycNum(1), omega, omega * omega};
  for (const CycNum& w : roots) {
    push(ProjPoint(CycNum(1), -w, CycNum(0)));
    push(ProjPoint(CycNum(1), CycNum(0), -w));
    push(ProjPoint(CycNum(0), CycNum(1), -w));
  }
  ProjPoint t = translation_point(pr);
  std::vector<ProjPoint> base = pool;
  ProjPoint acc = group_origin(pr);
  for (int k = 1; k <= 6 && static_cast<int>(pool.size()) < count + 3; ++k) {
    acc = group_add(pr, acc, t);
    push(acc);
    for (const ProjPoint& b : base) push(group_add(pr, b, acc));
  }
  if (static_cast<int>(pool.size()) < count)
    throw StructureError("curve point pool exhausted: wanted " +
                         std::to_string(count) + ", found " +
                         std::to_string(pool.size()));
  pool.erase(pool.begin() + count, pool.end());
  return pool;
}

}  // namespace skl

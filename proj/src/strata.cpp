#include "skl/strata.hpp"

#include <algorithm>
#include <sstream>

namespace skl {
namespace {

// The relation evaluated at the point.
CycNum relation_at(const CenterPresentation& cp, const YPoint& p) {
  return cp.F.eval(p.y);
}

void require_on_Y(const CenterPresentation& cp, const YPoint& p) {
  if (!on_Y(cp, p))
    throw DomainError("point " + p.str() + " is not on the variety");
}

// Exact rational cube root, if one exists.
bool rational_cube_root(const Rational& v, Rational* out) {
  mpz_class num = v.get_num(), den = v.get_den();
  bool neg = sgn(num) < 0;
  if (neg) num = -num;
  mpz_class rn, rd;
  bool ok_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 3) != 0;
  bool ok_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 3) != 0;
  if (!ok_n || !ok_d) return false;
  Rational r(neg ? -rn : rn, rd);
  r.canonicalize();
  *out = r;
  return true;
}

// All positive divisors of |n| (n != 0), via trial-division factorization.
// Coefficients here are built from small sampler inputs, so they are smooth;
// a leftover cofactor that cannot be certified prime raises an error instead
// of silently returning an incomplete list.
std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  std::vector<std::pair<mpz_class, int>> factors;
  for (long p = 2; p <= 1000000 && mpz_class(p) * p <= a; p += (p == 2 ? 1 : 2)) {
    if (!mpz_divisible_ui_p(a.get_mpz_t(), p)) continue;
    int e = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
      mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
      ++e;
    }
    factors.push_back({mpz_class(p), e});
  }
  if (a > 1) {
    if (mpz_probab_prime_p(a.get_mpz_t(), 40) == 0)
      throw DomainError("coefficient has an intractable large factor: " +
                        a.get_str());
    factors.push_back({a, 1});
  }
  std::vector<mpz_class> out = {mpz_class(1)};
  for (const auto& [p, e] : factors) {
    size_t base = out.size();
    if (base * (e + 1) > 200000)
      throw DomainError("coefficient has too many divisors to enumerate");
    mpz_class pk(1);
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long draw_nonzero(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  for (;;) {
    long v = d(rng);
    if (v != 0) return v;
  }
}

}  // namespace

YPoint YPoint::parse(const std::string& text, int conductor) {
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
  if (parts.size() != 4)
    throw DomainError("point must have four comma-separated coordinates");
  return YPoint{{parse_cyc(parts[0], conductor), parse_cyc(parts[1], conductor),
                 parse_cyc(parts[2], conductor), parse_cyc(parts[3], conductor)}};
}

bool YPoint::is_origin() const {
  return y[0].is_zero() && y[1].is_zero() && y[2].is_zero() && y[3].is_zero();
}

YPoint YPoint::dilated(const CycNum& beta, int n) const {
  CycNum bn = beta.pow(n), b3 = beta.pow(3);
  return YPoint{{y[0] * bn, y[1] * bn, y[2] * bn, y[3] * b3}};
}

std::string YPoint::str() const {
  return y[0].str() + "," + y[1].str() + "," + y[2].str() + "," + y[3].str();
}

std::string to_string(StratumTag tag) {
  switch (tag) {
    case StratumTag::kY1: return "Y1";
    case StratumTag::kY2: return "Y2";
    case StratumTag::kY3: return "Y3";
    case StratumTag::kY4: return "Y4";
  }
  throw InternalError("unknown stratum tag");
}

std::string Stratum::core_str() const {
  if (singleton_core) return "point";
  return "smooth part of the slice g = " + gamma.str();
}

bool on_Y(const CenterPresentation& cp, const YPoint& p) {
  return relation_at(cp, p).is_zero();
}

bool singular_test(const CenterPresentation& cp, const YPoint& p) {
  require_on_Y(cp, p);
  bool z_part = cp.F.partial(0).eval(p.y).is_zero() &&
                cp.F.partial(1).eval(p.y).is_zero() &&
                cp.F.partial(2).eval(p.y).is_zero();
  bool all_four = z_part && cp.F.partial(3).eval(p.y).is_zero();
  if (z_part != all_four)
    throw StructureError(
        "three- and four-partial singularity criteria disagree at " + p.str());
  return all_four;
}

YPoint CurveFamily::at(int i, const CycNum& gamma) const {
  if (i < 1 || i > 3) throw DomainError("curve index must be 1, 2 or 3");
  YPoint p;
  p.y[3] = gamma;
  p.y[i - 1] = -gamma.pow(n / 3) / alpha;
  return p;
}

CurveFamily curves_C(const CenterPresentation& cp) {
  if (cp.n % 3 != 0)
    throw DomainError("singular curves exist only when 3 divides the PI degree");
  if (!cp.structure.has_ell || cp.structure.alpha.is_zero())
    throw InternalError("structural linear form missing for 3 | n");
  return CurveFamily{cp.n, cp.structure.alpha};
}

bool on_curve(const CenterPresentation& cp, int i, const YPoint& p) {
  if (i < 1 || i > 3) throw DomainError("curve index must be 1, 2 or 3");
  if (cp.n % 3 != 0) return false;
  const CycNum& alpha = cp.structure.alpha;
  if (!p.y[i % 3].is_zero() || !p.y[(i + 1) % 3].is_zero()) return false;
  return (p.y[3].pow(cp.n / 3) + alpha * p.y[i - 1]).is_zero();
}

Stratum classify_stratum(const CenterPresentation& cp, const YPoint& p) {
  require_on_Y(cp, p);
  Stratum s;
  s.gamma = p.y[3];
  if (p.is_origin()) {
    s.tag = StratumTag::kY4;
    s.singleton_core = true;
    return s;
  }
  if (p.y[3].is_zero()) {
    s.tag = StratumTag::kY3;
    return s;
  }
  if (cp.n % 3 == 0)
    for (int i = 1; i <= 3; ++i)
      if (on_curve(cp, i, p)) {
        s.tag = StratumTag::kY2;
        s.singleton_core = true;
        return s;
      }
  s.tag = StratumTag::kY1;
  return s;
}

bool azumaya_test(const CenterPresentation& cp, const YPoint& p) {
  return !singular_test(cp, p);
}

std::vector<YPoint> slice_singulars(const CenterPresentation& cp,
                                    const CycNum& gamma) {
  if (gamma.is_zero()) return {YPoint::origin()};
  if (cp.n % 3 != 0) return {};
  CurveFamily fam = curves_C(cp);
  return {fam.at(1, gamma), fam.at(2, gamma), fam.at(3, gamma)};
}

std::vector<int> expected_irrep_profile(const CenterPresentation& cp,
                                        const YPoint& p) {
  switch (classify_stratum(cp, p).tag) {
    case StratumTag::kY1:
    case StratumTag::kY3: return {cp.n};
    case StratumTag::kY2: return {cp.n / 3, cp.n / 3, cp.n / 3};
    case StratumTag::kY4: return {1};
  }
  throw InternalError("unknown stratum tag");
}

std::string to_string(ZeroSetKind kind) {
  switch (kind) {
    case ZeroSetKind::kEmpty: return "empty";
    case ZeroSetKind::kOrigin: return "origin";
    case ZeroSetKind::kCurveUnion: return "curve-union";
  }
  throw InternalError("unknown zero-set kind");
}

ZeroSetKind discriminant_zero_set(const CenterPresentation& cp, long k) {
  long n2 = static_cast<long>(cp.n) * cp.n;
  if (k < 1 || k > n2)
    throw DomainError("discriminant index must lie in [1, n^2]");
  if (k == 1) return ZeroSetKind::kEmpty;
  if (cp.n % 3 != 0) return ZeroSetKind::kOrigin;
  return k <= n2 / 3 ? ZeroSetKind::kOrigin : ZeroSetKind::kCurveUnion;
}

CycNum structural_mu(const CenterPresentation& cp) {
  if (cp.n % 3 != 0)
    throw DomainError("structural cubic decomposition needs 3 | n");
  CommPoly ell3 = cp.structure.ell.pow(3);
  CommPoly delta = ell3 - cp.structure.Phi;  // should be mu * z1 z2 z3
  CycNum mu = delta.coeff({1, 1, 1, 0});
  if (mu.is_zero() ||
      delta != CommPoly::term({1, 1, 1, 0}, mu))
    throw StructureError(
        "structural cubic is not of the form ell^3 - mu*z1*z2*z3");
  return mu;
}

YPoint sample_smooth_point(const CenterPresentation& cp,
                           std::mt19937_64& rng) {
  const int n = cp.n;
  CycNum rho;  // rational cube root of the structural mu, when 3 | n
  if (n % 3 == 0) {
    CycNum mu = structural_mu(cp);
    Rational r;
    if (!mu.is_rational() || !rational_cube_root(mu.rational_value(), &r))
      throw StructureError(
          "smooth sampler needs the structural mu to be a rational cube");
    rho = CycNum(r);
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    YPoint p;
    if (n % 3 == 0) {
      // With Phi = ell^3 - mu*z1*z2*z3 the relation factors through
      // (g^{n/3} + ell)^3 - mu*z1*z2*z3, so cubes in the z-slots plus a
      // matched g-value give exact solutions whenever mu is a rational cube.
      const int q = n / 3;
      long a = draw_nonzero(rng, 1, 5), b = draw_nonzero(rng, 1, 5),
           c = draw_nonzero(rng, 1, 5), s = draw_nonzero(rng, 1, 4);
      CycNum pa(a), pb(b), pc(c);
      CycNum w = rho * pa * pb * pc -
                 cp.structure.alpha *
                     (pa.pow(3) + pb.pow(3) + pc.pow(3));
      if (w.is_zero()) continue;
      // z-scale W with W * w = (w*s)^{n/3}, so g = w*s closes the relation
      CycNum W = w.pow(q - 1) * CycNum(s).pow(q);
      p = YPoint::make(pa.pow(3) * W, pb.pow(3) * W, pc.pow(3) * W,
                       w * CycNum(s));
    } else {
      // Relation g^n + Phi(z): along the line z = t*d the equation becomes
      // g^n = -t^3 * Phi(d), solved exactly by t = -s^n Phi(d)^b with
      // 3b + 1 = 0 mod n.
      int bexp = 0;
      while ((3 * bexp + 1) % n != 0) ++bexp;
      long d1 = draw_nonzero(rng, -4, 4), d2 = draw_nonzero(rng, -4, 4),
           d3 = draw_nonzero(rng, -4, 4), s = draw_nonzero(rng, 1, 4);
      CycNum phi =
          cp.structure.Phi.eval({CycNum(d1), CycNum(d2), CycNum(d3), CycNum(0)});
      if (phi.is_zero()) continue;
      CycNum t = -CycNum(s).pow(n) * phi.pow(bexp);
      CycNum gamma = CycNum(s).pow(3) * phi.pow((3 * bexp + 1) / n);
      p = YPoint::make(CycNum(d1) * t, CycNum(d2) * t, CycNum(d3) * t, gamma);
    }
    if (!on_Y(cp, p))
      throw InternalError("smooth sampler produced an off-variety point " +
                          p.str());
    if (p.y[3].is_zero()) continue;
    bool curve_hit = false;
    if (n % 3 == 0)
      for (int i = 1; i <= 3 && !curve_hit; ++i) curve_hit = on_curve(cp, i, p);
    if (curve_hit) continue;
    return p;
  }
  throw InternalError("smooth sampler failed to produce a point");
}

YPoint sample_slice_zero_point(const CenterPresentation& cp,
                               std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    long t = draw_nonzero(rng, -6, 6);
    std::uniform_int_distribution<int> rot(0, 2);
    YPoint p = YPoint::make(CycNum(t), CycNum(-t), CycNum(0), CycNum(0));
    for (int r = rot(rng); r > 0; --r) p = p.cycled();
    if (!on_Y(cp, p))
      throw StructureError(
          "zero-slice sampler expects the structural cubic to vanish on "
          "(t,-t,0); got a nonzero value at " + p.str());
    return p;
  }
  throw InternalError("zero-slice sampler failed to produce a point");
}

std::vector<CycNum> slice_cubic_roots(const CenterPresentation& cp,
                                      const CycNum& z1, const CycNum& z2,
                                      const CycNum& gamma) {
  if (!z1.is_rational() || !z2.is_rational() || !gamma.is_rational())
    throw DomainError("slice root solving expects rational inputs");
  // Collect coefficients of powers of z3.
  int top = cp.F.degree_in(2);
  std::vector<Rational> coef(top + 1, Rational(0));
  for (const auto& [m, c] : cp.F.terms()) {
    CycNum v = c * z1.pow(m[0]) * z2.pow(m[1]) * gamma.pow(m[3]);
    if (!v.is_rational())
      throw DomainError("slice root solving expects rational coefficients");
    coef[m[2]] += v.rational_value();
  }
  while (!coef.empty() && is_zero(coef.back())) coef.pop_back();
  std::vector<CycNum> roots;
  if (coef.empty()) throw DomainError("slice polynomial is identically zero");
  // Strip t^v, recording 0 as a root.
  size_t low = 0;
  while (low < coef.size() && is_zero(coef[low])) ++low;
  if (low > 0) roots.push_back(CycNum(0));
  if (coef.size() - low <= 1) return roots;
  // Clear denominators to an integer polynomial.
  mpz_class den(1);
  for (size_t i = low; i < coef.size(); ++i)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), coef[i].get_den().get_mpz_t());
  std::vector<mpz_class> ic;
  for (size_t i = low; i < coef.size(); ++i) {
    Rational v = coef[i] * Rational(den);
    ic.push_back(v.get_num());
  }
  // Candidate roots p/q with p | constant and q | leading coefficient.
  std::vector<mpz_class> ps = positive_divisors(ic.front());
  std::vector<mpz_class> qs = positive_divisors(ic.back());
  for (const mpz_class& q : qs) {
    for (const mpz_class& pnum : ps) {
      for (int sign = 0; sign < 2; ++sign) {
        Rational cand(sign ? mpz_class(-pnum) : pnum, q);
        cand.canonicalize();
        Rational acc(0);
        for (size_t i = ic.size(); i-- > 0;) acc = acc * cand + Rational(ic[i]);
        if (is_zero(acc)) roots.push_back(CycNum(cand));
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const CycNum& a, const CycNum& b) {
    return a.rational_value() < b.rational_value();
  });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::string figure_svg(const CenterPresentation& cp) {
  const bool curves = (cp.n % 3 == 0);
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"460\" height=\"360\" "
       "viewBox=\"0 0 460 360\">\n"
    << "<rect width=\"460\" height=\"360\" fill=\"white\"/>\n"
    << "<text x=\"20\" y=\"28\" font-size=\"15\" font-family=\"sans-serif\">"
       "slice structure, PI degree " << cp.n << "</text>\n"
    // vertical axis for the g-value
    << "<line x1=\"60\" y1=\"50\" x2=\"60\" y2=\"320\" stroke=\"black\"/>\n"
    << "<text x=\"40\" y=\"60\" font-size=\"12\" font-family=\"sans-serif\">g</text>\n"
    // three slices: g = 1 (smooth), g = 0 (cone through the origin), g = -1
    << "<ellipse cx=\"240\" cy=\"90\" rx=\"140\" ry=\"26\" fill=\"none\" "
       "stroke=\"black\"/>\n"
    << "<text x=\"392\" y=\"94\" font-size=\"12\" font-family=\"sans-serif\">"
       "g = 1</text>\n"
    << "<path d=\"M 100 185 Q 240 150 380 185\" fill=\"none\" stroke=\"black\"/>\n"
    << "<path d=\"M 100 185 Q 240 220 380 185\" fill=\"none\" stroke=\"black\"/>\n"
    << "<circle cx=\"240\" cy=\"185\" r=\"3\" fill=\"black\"/>\n"
    << "<text x=\"392\" y=\"189\" font-size=\"12\" font-family=\"sans-serif\">"
       "g = 0</text>\n"
    << "<text x=\"248\" y=\"178\" font-size=\"11\" font-family=\"sans-serif\">"
       "origin (Y4)</text>\n"
    << "<ellipse cx=\"240\" cy=\"280\" rx=\"140\" ry=\"26\" fill=\"none\" "
       "stroke=\"black\"/>\n"
    << "<text x=\"386\" y=\"284\" font-size=\"12\" font-family=\"sans-serif\">"
       "g = -1</text>\n";
  if (curves) {
    // the three singular curves through the origin, meeting every slice
    s << "<path d=\"M 150 70 Q 200 150 240 185 Q 280 230 310 300\" "
         "fill=\"none\" stroke=\"firebrick\"/>\n"
      << "<path d=\"M 240 64 Q 240 140 240 185 Q 240 240 240 306\" "
         "fill=\"none\" stroke=\"firebrick\"/>\n"
      << "<path d=\"M 330 70 Q 280 150 240 185 Q 200 230 170 300\" "
         "fill=\"none\" stroke=\"firebrick\"/>\n"
      << "<text x=\"138\" y=\"62\" font-size=\"11\" fill=\"firebrick\" "
         "font-family=\"sans-serif\">C1</text>\n"
      << "<text x=\"236\" y=\"56\" font-size=\"11\" fill=\"firebrick\" "
         "font-family=\"sans-serif\">C2</text>\n"
      << "<text x=\"334\" y=\"62\" font-size=\"11\" fill=\"firebrick\" "
         "font-family=\"sans-serif\">C3</text>\n";
  }
  s << "<text x=\"20\" y=\"338\" font-size=\"11\" font-family=\"sans-serif\">"
    << "Y1: smooth, g != 0"
    << (curves ? ", off C1,C2,C3 | Y2: on the curves, g != 0" : "")
    << " | Y3: g = 0, nonzero | Y4: origin</text>\n</svg>\n";
  return s.str();
}

}  // namespace skl

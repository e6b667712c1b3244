#include "skl/specialize.hpp"

#include <algorithm>
#include <utility>

#include "skl/linalg.hpp"

namespace skl {
namespace {

HbarScalar one_hbar(const CycNum& base, const CycNum& slope) {
  return HbarScalar(HbarPoly(std::vector<CycNum>{base, slope}),
                    HbarPoly(CycNum(1)));
}

HbarRat hbar_power(int k) {
  return HbarRat(HbarPoly(CycNum(1)).shifted_up(k), HbarPoly(CycNum(1)));
}

NCPoly<HbarRat> embed(const NCPoly<CycNum>& p) {
  return p.map_coeffs<HbarRat>([](const CycNum& v) { return HbarRat(v); });
}

NCPoly<HbarRat> scaled(const NCPoly<HbarRat>& p, const HbarRat& s) {
  return p.map_coeffs<HbarRat>([&](const HbarRat& v) { return v * s; });
}

// Raw degree-3 central element with deformed coefficients, the same
// parameter-symmetric form central_g uses.
NCPoly<HbarRat> deformed_raw_g(const std::array<HbarRat, 3>& p) {
  const HbarRat &a = p[0], &b = p[1], &c = p[2];
  HbarRat a3 = a * a * a, b3 = b * b * b, c3 = c * c * c;
  NCPoly<HbarRat> raw;
  raw.add_term("yyy", c * (c3 - b3));
  raw.add_term("yxz", b * (c3 - a3));
  raw.add_term("xyz", a * (b3 - c3));
  raw.add_term("xxx", c * (a3 - c3));
  return raw;
}

}  // namespace

HbarLattice::HbarLattice(const RewriteSystem<HbarRat>& rs,
                         const RewriteSystem<CycNum>& rs0) {
  const int cap = rs.degree_cap();
  degs_.resize(cap + 1);
  degs_[0].cols = {std::vector<HbarRat>{HbarRat(1)}};
  degs_[0].image0 = {std::vector<CycNum>{CycNum(1)}};
  degs_[0].words = rs0.basis(0);
  for (int d = 1; d <= cap; ++d) {
    const int dim = static_cast<int>(rs.basis(d).size());
    if (dim != static_cast<int>(rs0.basis(d).size()))
      throw InternalError("graded dimensions of the two fibers disagree at degree " +
                          std::to_string(d));
    Degree& cur = degs_[d];
    cur.cols.assign(dim, {});
    cur.image0.assign(dim, {});
    cur.words = rs0.basis(d);
    const Degree& prev = degs_[d - 1];
    const int pdim = static_cast<int>(prev.cols.size());
    for (int j = 0; j < pdim; ++j) {
      for (int c = 0; c < 3; ++c) {
        // generator: (previous lattice basis vector) * letter, in both fibers
        GradedVec<HbarRat> sp{d - 1, {}};
        for (int r = 0; r < pdim; ++r)
          if (!prev.cols[j][r].is_zero()) sp.v.push_back({r, prev.cols[j][r]});
        std::vector<HbarRat> g(dim);
        for (const auto& [r, v] : rs.mul_letter(sp, c).v) g[r] = v;

        GradedVec<CycNum> sp0{d - 1, {}};
        for (int r = 0; r < pdim; ++r)
          if (!prev.image0[j][r].is_zero())
            sp0.v.push_back({r, prev.image0[j][r]});
        std::vector<CycNum> t(dim, CycNum(0));
        for (const auto& [r, v] : rs0.mul_letter(sp0, c).v) t[r] = v;

        // eliminate over the valuation ring, keeping the smaller-valuation
        // entry as the pivot so every quotient stays regular at hbar = 0
        for (int r = 0; r < dim; ++r) {
          if (g[r].is_zero()) continue;
          std::vector<HbarRat>& p = cur.cols[r];
          std::vector<CycNum>& ip = cur.image0[r];
          if (p.empty()) {
            int k = g[r].valuation();
            HbarRat unit_inv = g[r].div_hbar(k).inverse();
            CycNum unit_inv0 = unit_inv.eval0();
            for (int s = r; s < dim; ++s)
              if (!g[s].is_zero()) g[s] *= unit_inv;
            for (int s = 0; s < dim; ++s)
              if (!t[s].is_zero()) t[s] = t[s] * unit_inv0;
            p = std::move(g);
            ip = std::move(t);
            break;
          }
          if (g[r].valuation() < p[r].valuation()) {
            std::swap(g, p);
            std::swap(t, ip);
            int k = p[r].valuation();
            HbarRat unit_inv = p[r].div_hbar(k).inverse();
            CycNum unit_inv0 = unit_inv.eval0();
            for (int s = r; s < dim; ++s)
              if (!p[s].is_zero()) p[s] *= unit_inv;
            for (int s = 0; s < dim; ++s)
              if (!ip[s].is_zero()) ip[s] = ip[s] * unit_inv0;
          }
          HbarRat x = g[r] / p[r];
          CycNum x0 = x.eval0();
          for (int s = r; s < dim; ++s)
            if (!p[s].is_zero()) g[s] -= x * p[s];
          if (!x0.is_zero())
            for (int s = 0; s < dim; ++s)
              if (!ip[s].is_zero()) t[s] -= x0 * ip[s];
        }
      }
    }
    for (int r = 0; r < dim; ++r)
      if (cur.cols[r].empty())
        throw StructureError("word span drops rank at degree " +
                             std::to_string(d));
  }
}

int HbarLattice::valuation(const GradedVec<HbarRat>& v) const {
  if (v.is_zero()) return kValInfinity;
  const Degree& D = degs_.at(v.degree);
  const int dim = static_cast<int>(D.cols.size());
  std::vector<HbarRat> w(dim);
  for (const auto& [r, c] : v.v) w[r] = c;
  int out = kValInfinity;
  for (int r = 0; r < dim; ++r) {
    if (w[r].is_zero()) continue;
    const std::vector<HbarRat>& p = D.cols[r];
    HbarRat x = w[r] / p[r];
    if (x.valuation() < 0)
      throw InternalError("element leaves the word-span lattice at degree " +
                          std::to_string(v.degree));
    out = std::min(out, x.valuation());
    for (int s = r; s < dim; ++s)
      if (!p[s].is_zero()) w[s] -= x * p[s];
  }
  return out;
}

NCPoly<CycNum> HbarLattice::theta(const GradedVec<HbarRat>& v,
                                  int level) const {
  NCPoly<CycNum> out;
  if (v.is_zero()) return out;
  const Degree& D = degs_.at(v.degree);
  const int dim = static_cast<int>(D.cols.size());
  std::vector<HbarRat> w(dim);
  for (const auto& [r, c] : v.v) w[r] = c;
  std::vector<CycNum> acc(dim, CycNum(0));
  for (int r = 0; r < dim; ++r) {
    if (w[r].is_zero()) continue;
    const std::vector<HbarRat>& p = D.cols[r];
    HbarRat x = w[r] / p[r];
    if (x.valuation() < level)
      throw StructureError("element valuation drops below the requested level at degree " +
                           std::to_string(v.degree));
    for (int s = r; s < dim; ++s)
      if (!p[s].is_zero()) w[s] -= x * p[s];
    CycNum x0 = x.div_hbar(level).eval0();
    if (!x0.is_zero()) {
      const std::vector<CycNum>& ip = D.image0[r];
      for (int s = 0; s < dim; ++s)
        if (!ip[s].is_zero()) acc[s] += x0 * ip[s];
    }
  }
  for (int s = 0; s < dim; ++s)
    if (!acc[s].is_zero()) out.add_term(D.words[s], acc[s]);
  return out;
}

Direction Direction::parse(const std::string& text, int conductor) {
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
    throw DomainError("direction must have three comma-separated components");
  return Direction{parse_cyc(parts[0], conductor), parse_cyc(parts[1], conductor),
                   parse_cyc(parts[2], conductor)};
}

std::string Direction::str() const {
  return da.str() + "," + db.str() + "," + dc.str();
}

bool check_direction(const Params& pr, const Direction& dir, int n,
                     int order_cap, int samples) {
  if (dir.is_zero()) throw DomainError("deformation direction must be nonzero");
  for (int d = 1; d <= samples; ++d) {
    CycNum t(d);
    Params q = Params::make(pr.a + t * dir.da, pr.b + t * dir.db,
                            pr.c + t * dir.dc);
    if (!q.is_valid()) continue;
    bool divides = false;
    try {
      divides = (n % sigma_order(q, order_cap) == 0);
    } catch (const CapExceededError&) {
      divides = false;  // order above the cap cannot divide n
    }
    if (!divides) return true;
  }
  return false;
}

HbarAlgebra make_hbar_algebra(const CenterPresentation& cp,
                              const Direction& dir, int order_cap) {
  if (dir.is_zero()) throw DomainError("deformation direction must be nonzero");
  const int n = cp.n;
  const int cap = 2 * n;
  std::array<HbarScalar, 3> ph = {one_hbar(cp.params.a, dir.da),
                                  one_hbar(cp.params.b, dir.db),
                                  one_hbar(cp.params.c, dir.dc)};
  std::array<HbarRat, 3> pa = {HbarRat(ph[0]), HbarRat(ph[1]), HbarRat(ph[2])};
  bool generic = check_direction(cp.params, dir, n, order_cap);
  RewriteSystem<HbarRat> rs(pa, cap);
  RewriteSystem<CycNum> rs0({cp.params.a, cp.params.b, cp.params.c}, cap);
  HbarLattice lattice(rs, rs0);

  std::array<NCPoly<HbarRat>, 3> xt;
  for (int i = 0; i < 3; ++i) xt[i] = embed(cp.basis.x[i]);

  NCPoly<HbarRat> gt = deformed_raw_g(pa);
  CycNum denom0 = cp.params.c.pow(3) - cp.params.a.pow(3);
  if (!denom0.is_zero()) {
    // Same normalization branch as the undeformed presentation; division is
    // harmless here because the denominator is nonzero at hbar = 0.
    HbarRat denom = pa[2] * pa[2] * pa[2] - pa[0] * pa[0] * pa[0];
    gt = scaled(gt, denom.inverse());
  }
  auto rep = rs.is_central(gt);
  if (!rep.central)
    throw InternalError("deformed degree-3 element is not central (witness [g, " +
                        std::string(1, kLetters[rep.witness_generator]) + "])");

  return HbarAlgebra{cp,
                     dir,
                     generic,
                     std::move(ph),
                     std::move(rs),
                     std::move(rs0),
                     std::move(lattice),
                     std::move(xt),
                     std::move(gt)};
}

Section naive_section(const HbarAlgebra& alg) {
  const int n = alg.center.n;
  Section sec;
  sec.g = alg.gt;
  for (int i = 0; i < 3; ++i) {
    NCPoly<HbarRat> acc = alg.xt[i].pow(n);
    for (size_t j = 1; j <= alg.center.cs.size(); ++j) {
      int jj = static_cast<int>(j);
      NCPoly<HbarRat> t = alg.gt.pow(jj) * alg.xt[i].pow(n - 3 * jj);
      acc += scaled(t, HbarRat(alg.center.cs[j - 1]));
    }
    sec.z[i] = std::move(acc);
  }
  return sec;
}

int commutator_level(const HbarAlgebra& alg, const Section& sec) {
  int level = kValInfinity;
  const std::array<const NCPoly<HbarRat>*, 4> ss = {&sec.z[0], &sec.z[1],
                                                       &sec.z[2], &sec.g};
  for (const auto* s : ss) {
    for (int w = 0; w < 3; ++w) {
      NCPoly<HbarRat> nf =
          alg.rs.normal_form(commutator(*s, NCPoly<HbarRat>::generator(w)));
      if (nf.is_zero()) continue;
      for (int d = 0; d <= nf.degree(); ++d) {
        NCPoly<HbarRat> comp = nf.component(d);
        if (!comp.is_zero())
          level = std::min(level,
                           alg.lattice.valuation(alg.rs.reduce_component(comp)));
      }
    }
  }
  return level;
}

NCPoly<CycNum> apply_derivation(const HbarAlgebra& alg,
                                const NCPoly<HbarRat>& s,
                                const NCPoly<HbarRat>& lift, int level) {
  NCPoly<HbarRat> nf = alg.rs.normal_form(commutator(s, lift));
  NCPoly<CycNum> out;
  if (nf.is_zero()) return out;
  for (int d = 0; d <= nf.degree(); ++d) {
    NCPoly<HbarRat> comp = nf.component(d);
    if (!comp.is_zero())
      out += alg.lattice.theta(alg.rs.reduce_component(comp), level);
  }
  return out;
}

DerivationTable special_derivation(const HbarAlgebra& alg, const Section& sec,
                                   int level) {
  DerivationTable table;
  table.level = level;
  const std::array<const NCPoly<HbarRat>*, 4> ss = {&sec.z[0], &sec.z[1],
                                                       &sec.z[2], &sec.g};
  for (int s = 0; s < 4; ++s)
    for (int w = 0; w < 3; ++w)
      table.d[s][w] = apply_derivation(alg, *ss[s],
                                       NCPoly<HbarRat>::generator(w), level);
  return table;
}

CommPoly central_coordinates(const HbarAlgebra& alg, const NCPoly<CycNum>& p,
                             int wdeg) {
  if (p.is_zero()) return CommPoly();
  if (!p.is_homogeneous() || p.degree() != wdeg)
    throw InternalError("central_coordinates expects a homogeneous element of degree " +
                        std::to_string(wdeg));
  const int n = alg.center.n;
  const std::vector<CMono> monos = weighted_monomials(n, wdeg);
  const int dim = static_cast<int>(alg.rs0.basis(wdeg).size());
  Matrix<CycNum> M(dim, static_cast<int>(monos.size()));
  for (size_t m = 0; m < monos.size(); ++m) {
    GradedVec<CycNum> gv = alg.rs0.unit();
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < monos[m][i]; ++k)
        gv = alg.rs0.mul_poly(gv, alg.center.z[i]);
    for (int k = 0; k < monos[m][3]; ++k)
      gv = alg.rs0.mul_poly(gv, alg.center.g);
    if (gv.degree != wdeg)
      throw InternalError("weighted monomial has wrong plain degree");
    for (const auto& [row, v] : gv.v) M.at(row, static_cast<int>(m)) = v;
  }
  GradedVec<CycNum> pv = alg.rs0.reduce_component(p);
  std::vector<CycNum> rhs(dim, CycNum(0));
  for (const auto& [row, v] : pv.v) rhs[row] = v;
  auto sol = M.solve_unique(rhs);
  if (!sol)
    throw StructureError(
        "element of degree " + std::to_string(wdeg) +
        " does not lie in the span of the weighted central monomials");
  CommPoly out;
  for (size_t m = 0; m < monos.size(); ++m) out.add_term(monos[m], (*sol)[m]);
  return out;
}

std::array<CommPoly, 3> induced_brackets(const HbarAlgebra& alg,
                                         const Section& sec, int level) {
  static const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  std::array<CommPoly, 3> out;
  for (int k = 0; k < 3; ++k) {
    NCPoly<CycNum> br =
        apply_derivation(alg, sec.z[pairs[k][0]], sec.z[pairs[k][1]], level);
    if (!br.is_zero()) out[k] = central_coordinates(alg, br, 2 * alg.center.n);
  }
  return out;
}

PoissonOrderResult maximize_level(const HbarAlgebra& alg, int level_cap) {
  const int n = alg.center.n;
  const int m = static_cast<int>(alg.center.cs.size());
  Section sec = naive_section(alg);
  int iterations = 0;
  int prev = -1;
  for (;;) {
    int level = commutator_level(alg, sec);
    if (level == kValInfinity)
      throw StructureError(
          "all section commutators vanish; the direction leaves the center "
          "undeformed");
    if (level > level_cap)
      throw CapExceededError("specialization level " + std::to_string(level) +
                             " exceeds cap " + std::to_string(level_cap));
    if (prev >= 0 && level <= prev)
      throw InternalError("section correction failed to raise the level");
    prev = level;

    std::array<CommPoly, 3> br = induced_brackets(alg, sec, level);
    if (!br[0].is_zero() || !br[1].is_zero() || !br[2].is_zero()) {
      PoissonOrderResult res;
      res.level = level;
      res.iterations = iterations;
      res.brackets = std::move(br);
      res.derivations = special_derivation(alg, sec, level);
      res.section = std::move(sec);
      return res;
    }
    if (m == 0)
      throw StructureError(
          "induced brackets vanish and the section family has no correction "
          "coefficients");

    // Solve for corrections c'_j with, for every generator pair (i, w),
    //   d[i][w] = sum_j c'_j nf([g^j x_i^(n-3j), w])
    // in the undeformed algebra; replacing z_i by z_i - hbar^level * sum_j
    // c'_j gt^j xt_i^(n-3j) then cancels the whole level-`level` layer.
    DerivationTable der = special_derivation(alg, sec, level);
    const int dim = static_cast<int>(alg.rs0.basis(n + 1).size());
    Matrix<CycNum> B(9 * dim, m);
    std::vector<CycNum> rhs(9 * dim, CycNum(0));
    for (int i = 0; i < 3; ++i) {
      for (int w = 0; w < 3; ++w) {
        const int base = (3 * i + w) * dim;
        if (!der.d[i][w].is_zero()) {
          GradedVec<CycNum> dv = alg.rs0.reduce_component(der.d[i][w]);
          for (const auto& [row, v] : dv.v) rhs[base + row] = v;
        }
        for (int j = 1; j <= m; ++j) {
          NCPoly<CycNum> elt =
              alg.center.g.pow(j) * alg.center.basis.x[i].pow(n - 3 * j);
          NCPoly<CycNum> comm = commutator(elt, NCPoly<CycNum>::generator(w));
          if (comm.is_zero()) continue;
          GradedVec<CycNum> cv = alg.rs0.reduce_component(comm);
          for (const auto& [row, v] : cv.v) B.at(base + row, j - 1) = v;
        }
      }
    }
    auto sol = B.solve_unique(rhs);
    if (!sol)
      throw StructureError(
          "level " + std::to_string(level) +
          " cannot be raised within the prescribed section corrections");
    for (int i = 0; i < 3; ++i) {
      for (int j = 1; j <= m; ++j) {
        if ((*sol)[j - 1].is_zero()) continue;
        NCPoly<HbarRat> corr = alg.gt.pow(j) * alg.xt[i].pow(n - 3 * j);
        sec.z[i] -= scaled(corr, hbar_power(level) * HbarRat((*sol)[j - 1]));
      }
    }
    ++iterations;
  }
}

EtaReport compare_to_dF(const std::array<CommPoly, 3>& brackets,
                        const CommPoly& F, int n) {
  PoissonStructure ps = bracket_from_F(F, n);
  std::array<CommPoly, 3> ref, br;
  for (int k = 0; k < 3; ++k) {
    ref[k] = ps.br[k].reduced_mod(F);
    br[k] = brackets[k].reduced_mod(F);
  }
  EtaReport rep;
  for (int k = 0; k < 3; ++k) {
    if (ref[k].is_zero()) continue;
    const auto& [mono, cv] = *ref[k].terms().begin();
    rep.eta = br[k].coeff(mono) / cv;
    for (int t = 0; t < 3; ++t) {
      CommPoly diff = br[t] - ref[t].scaled(rep.eta);
      if (!diff.is_zero()) {
        rep.matches = false;
        rep.witness_pair = t;
        rep.residual = std::move(diff);
        return rep;
      }
    }
    rep.matches = true;
    return rep;
  }
  // All reference partials reduce to zero: only the zero triple matches.
  rep.eta = CycNum(0);
  rep.matches = br[0].is_zero() && br[1].is_zero() && br[2].is_zero();
  if (!rep.matches)
    for (int k = 0; k < 3; ++k)
      if (!br[k].is_zero()) {
        rep.witness_pair = k;
        rep.residual = br[k];
        break;
      }
  return rep;
}

}  // namespace skl

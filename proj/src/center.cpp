#include "skl/center.hpp"

#include <sstream>

namespace skl {

namespace {

const CycNum& zeta3() {
  static const CycNum z = CycNum::zeta(3);
  return z;
}

// gv * form repeated k times, starting from the unit.
GradedVec<CycNum> form_power(const RewriteSystem<CycNum>& rs,
                             const NCPoly<CycNum>& form, int k) {
  GradedVec<CycNum> gv = rs.unit();
  for (int i = 0; i < k; ++i) gv = rs.mul_poly(gv, form);
  return gv;
}

NCPoly<CycNum> linear_form(const CycNum& cx, const CycNum& cy,
                           const CycNum& cz) {
  NCPoly<CycNum> p;
  p.add_term(Word(1, kLetters[0]), cx);
  p.add_term(Word(1, kLetters[1]), cy);
  p.add_term(Word(1, kLetters[2]), cz);
  return p;
}

// lambda with a == b.scaled(lambda), for nonzero linear forms.
std::optional<CycNum> proportionality(const NCPoly<CycNum>& a,
                                      const NCPoly<CycNum>& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [w, c] = b.leading();
  CycNum lambda = a.coeff(w) / c;
  if (a == b.scaled(lambda)) return lambda;
  return std::nullopt;
}

int family_for_rho_class(const H3Element& rho) {
  if (rho.e3 == 0) return 1;  // diagonal classes
  if (rho.e2 == 0) return 2;  // pure cyclic classes
  // mixed classes pair up with their inverses
  if ((rho.e2 == 2 && rho.e3 == 1) || (rho.e2 == 1 && rho.e3 == 2)) return 3;
  return 4;  // (1,1) and (2,2)
}

std::vector<CMono> cubic_monomials() {
  std::vector<CMono> out;
  for (int a = 3; a >= 0; --a)
    for (int b = 3 - a; b >= 0; --b) out.push_back({a, b, 3 - a - b, 0});
  return out;
}

}  // namespace

Matrix<CycNum> H3Element::matrix() const {
  const CycNum& z = zeta3();
  Matrix<CycNum> m(3, 3);
  // rho2^e2 * rho3^e3: column i is zeta^(e2 * ((i + e3) mod 3 weights))
  // applied to the shifted unit vector; build by explicit composition.
  Matrix<CycNum> d = Matrix<CycNum>::identity(3);
  d.at(1, 1) = z;
  d.at(2, 2) = z * z;
  Matrix<CycNum> p(3, 3);
  p.at(1, 0) = CycNum(1);  // x -> y
  p.at(2, 1) = CycNum(1);  // y -> z
  p.at(0, 2) = CycNum(1);  // z -> x
  Matrix<CycNum> r = Matrix<CycNum>::identity(3);
  for (int i = 0; i < e2; ++i) r = r * d;
  for (int i = 0; i < e3; ++i) r = r * p;
  return r.scaled(z.pow(e1));
}

std::array<NCPoly<CycNum>, 3> H3Element::generator_images() const {
  Matrix<CycNum> m = matrix();
  std::array<NCPoly<CycNum>, 3> images;
  for (int i = 0; i < 3; ++i)
    images[i] = linear_form(m.at(0, i), m.at(1, i), m.at(2, i));
  return images;
}

std::string H3Element::str() const {
  std::ostringstream out;
  bool any = false;
  auto emit = [&](const char* name, int e) {
    if (e == 0) return;
    if (any) out << " ";
    out << name;
    if (e > 1) out << "^" << e;
    any = true;
  };
  emit("rho1", e1);
  emit("rho2", e2);
  emit("rho3", e3);
  return any ? out.str() : "id";
}

ProjPoint h3_point_image(const H3Element& h, const ProjPoint& p) {
  Matrix<CycNum> m = h.matrix();
  Matrix<CycNum> t(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.at(i, j) = m.at(j, i);
  return apply_matrix(t, p);
}

std::array<std::array<NCPoly<CycNum>, 3>, 4> basis_families() {
  const CycNum one(1);
  const CycNum& z = zeta3();
  CycNum z2 = z * z;
  return {{
      {linear_form(one, CycNum(0), CycNum(0)),
       linear_form(CycNum(0), one, CycNum(0)),
       linear_form(CycNum(0), CycNum(0), one)},
      {linear_form(one, one, one), linear_form(one, z2, z),
       linear_form(one, z, z2)},
      {linear_form(one, one, z2), linear_form(one, z2, one),
       linear_form(one, z, z)},
      {linear_form(one, one, z), linear_form(one, z, one),
       linear_form(one, z2, z2)},
  }};
}

H3Element find_tau(std::array<NCPoly<CycNum>, 3>& forms) {
  std::vector<H3Element> all;
  for (int e1 = 0; e1 < 3; ++e1)
    for (int e2 = 0; e2 < 3; ++e2)
      for (int e3 = 0; e3 < 3; ++e3) all.push_back(H3Element::make(e1, e2, e3));

  for (const H3Element& h : all) {
    auto images = h.generator_images();
    bool exact = true;
    for (int i = 0; i < 3 && exact; ++i)
      exact = forms[i].substituted(images) == forms[(i + 1) % 3];
    if (exact) return h;
  }
  // Projective cycle: tau(x_i) = lambda_i x_{i+1}; a rescaling of the forms
  // makes it exact precisely when the lambda product is 1.
  for (const H3Element& h : all) {
    auto images = h.generator_images();
    std::array<CycNum, 3> lambda;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      auto l = proportionality(forms[i].substituted(images), forms[(i + 1) % 3]);
      if (!l || l->is_zero()) ok = false;
      else lambda[i] = *l;
    }
    if (!ok || lambda[0] * lambda[1] * lambda[2] != CycNum(1)) continue;
    std::array<CycNum, 3> mu = {CycNum(1), lambda[0], lambda[0] * lambda[1]};
    for (int i = 0; i < 3; ++i) forms[i] = forms[i].scaled(mu[i]);
    for (int i = 0; i < 3; ++i)
      if (forms[i].substituted(images) != forms[(i + 1) % 3])
        throw InternalError("find_tau: rescaled cycle failed to close");
    return h;
  }
  throw StructureError("find_tau: no Heisenberg element cycles the basis");
}

H3Element identify_rho(const Params& pr, int n) {
  if (n % 3 != 0)
    throw DomainError("identify_rho requires 3 | n, got n = " +
                      std::to_string(n));
  ProjPoint target =
      group_multiple(pr, n / 3, translation_point(pr));
  ProjPoint origin = group_origin(pr);
  for (int e2 = 0; e2 < 3; ++e2)
    for (int e3 = 0; e3 < 3; ++e3) {
      if (e2 == 0 && e3 == 0) continue;
      H3Element h = H3Element::make(0, e2, e3);
      if (h3_point_image(h, origin) == target) return h;
    }
  throw InternalError(
      "identify_rho: no Heisenberg class translates by the order-3 point");
}

NCPoly<CycNum> central_g(const Params& pr) {
  CycNum a3 = pr.a.pow(3), b3 = pr.b.pow(3), c3 = pr.c.pow(3);
  NCPoly<CycNum> g;
  g.add_term(Word("yyy"), pr.c * (c3 - b3));
  g.add_term(Word("yxz"), pr.b * (c3 - a3));
  g.add_term(Word("xyz"), pr.a * (b3 - c3));
  g.add_term(Word("xxx"), pr.c * (a3 - c3));
  RewriteSystem<CycNum> rs({pr.a, pr.b, pr.c}, 4);
  auto rep = rs.is_central(g);
  if (!rep.central)
    throw InternalError("central_g: candidate fails centrality against " +
                        rep.witness_generator);
  return g;
}

NCPoly<CycNum> presentation_g(const Params& pr) {
  NCPoly<CycNum> g = central_g(pr);
  CycNum denom = pr.c.pow(3) - pr.a.pow(3);
  if (!denom.is_zero()) g = g.scaled(denom.inverse());
  return g;
}

std::optional<CentralZResult> central_z(const RewriteSystem<CycNum>& rs,
                                        const GoodBasis& basis,
                                        const NCPoly<CycNum>& g, int n) {
  int m = (n - 1) / 3;  // number of correction terms, j < n/3
  std::array<NCPoly<CycNum>, 3> base;
  std::vector<std::array<NCPoly<CycNum>, 3>> corr(m);
  for (int i = 0; i < 3; ++i) {
    base[i] = rs.to_poly(form_power(rs, basis.x[i], n));
    GradedVec<CycNum> gv = rs.unit();
    for (int j = 1; j <= m; ++j) {
      gv = rs.mul_poly(gv, g);
      GradedVec<CycNum> t = gv;
      for (int k = 0; k < n - 3 * j; ++k) t = rs.mul_poly(t, basis.x[i]);
      corr[j - 1][i] = rs.to_poly(t);
    }
  }

  auto commutator_nf = [&](const NCPoly<CycNum>& p, int w) {
    return rs.normal_form(commutator(p, NCPoly<CycNum>::generator(w)));
  };

  if (m == 0) {
    for (int i = 0; i < 3; ++i)
      for (int w = 0; w < 3; ++w)
        if (!commutator_nf(base[i], w).is_zero()) return std::nullopt;
    return CentralZResult{base, {}};
  }

  // One linear equation per basis word of each commutator component:
  //   sum_j c_j * [corr_j, w] = -[base, w]
  int dim = static_cast<int>(rs.basis(n + 1).size());
  Matrix<CycNum> sys(9 * dim, m);
  std::vector<CycNum> rhs(9 * dim, CycNum(0));
  int block = 0;
  for (int i = 0; i < 3; ++i)
    for (int w = 0; w < 3; ++w, ++block) {
      NCPoly<CycNum> a = commutator_nf(base[i], w);
      for (const auto& [word, c] : a.terms())
        rhs[block * dim + rs.basis_index(n + 1, word)] = -c;
      for (int j = 0; j < m; ++j) {
        NCPoly<CycNum> b = commutator_nf(corr[j][i], w);
        for (const auto& [word, c] : b.terms())
          sys.at(block * dim + rs.basis_index(n + 1, word), j) = c;
      }
    }

  Matrix<CycNum> aug(sys.rows(), m + 1);
  for (int i = 0; i < sys.rows(); ++i) {
    for (int j = 0; j < m; ++j) aug.at(i, j) = sys.at(i, j);
    aug.at(i, m) = rhs[i];
  }
  std::vector<int> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == m) return std::nullopt;  // inconsistent
  if (static_cast<int>(pivots.size()) < m)
    throw StructureError(
        "central_z: correction coefficients are not uniquely determined");
  std::vector<CycNum> cs(m, CycNum(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    cs[pivots[r]] = aug.at(static_cast<int>(r), m);

  CentralZResult res;
  res.cs = cs;
  for (int i = 0; i < 3; ++i) {
    res.z[i] = base[i];
    for (int j = 0; j < m; ++j) res.z[i] += corr[j][i].scaled(cs[j]);
    auto rep = rs.is_central(res.z[i]);
    if (!rep.central)
      throw InternalError("central_z: solved element fails centrality against " +
                          rep.witness_generator);
  }
  return res;
}

std::vector<CMono> weighted_monomials(int n, int d) {
  std::vector<CMono> out;
  for (int s = 0; n * s <= d; ++s) {
    int rem = d - n * s;
    if (rem % 3 != 0) continue;
    int l0 = rem / 3;
    for (int l1 = s; l1 >= 0; --l1)
      for (int l2 = s - l1; l2 >= 0; --l2)
        out.push_back({l1, l2, s - l1 - l2, l0});
  }
  return out;
}

namespace {

// Normal form of z1^l1 z2^l2 z3^l3 g^l0 as a coordinate vector in the
// degree-d basis of the rewrite system.
GradedVec<CycNum> monomial_nf(const RewriteSystem<CycNum>& rs,
                              const std::array<NCPoly<CycNum>, 3>& z,
                              const NCPoly<CycNum>& g, const CMono& m) {
  GradedVec<CycNum> gv = rs.unit();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < m[i]; ++k) gv = rs.mul_poly(gv, z[i]);
  for (int k = 0; k < m[3]; ++k) gv = rs.mul_poly(gv, g);
  return gv;
}

}  // namespace

CommPoly central_relation_F(const RewriteSystem<CycNum>& rs,
                            const std::array<NCPoly<CycNum>, 3>& z,
                            const NCPoly<CycNum>& g, int n) {
  std::vector<CMono> monos = weighted_monomials(n, 3 * n);
  int dim = static_cast<int>(rs.basis(3 * n).size());
  Matrix<CycNum> mat(dim, static_cast<int>(monos.size()));
  for (size_t col = 0; col < monos.size(); ++col) {
    GradedVec<CycNum> gv = monomial_nf(rs, z, g, monos[col]);
    for (const auto& [row, c] : gv.v) mat.at(row, static_cast<int>(col)) = c;
  }
  auto kernel = mat.kernel_basis();
  if (kernel.size() != 1)
    throw StructureError("central_relation_F: kernel dimension " +
                         std::to_string(kernel.size()) + ", expected 1");
  const CMono gn = {0, 0, 0, n};
  CycNum lead;
  for (size_t col = 0; col < monos.size(); ++col)
    if (monos[col] == gn) lead = kernel[0][col];
  if (lead.is_zero())
    throw StructureError("central_relation_F: relation misses the g^n term");
  CycNum inv = lead.inverse();
  CommPoly F;
  for (size_t col = 0; col < monos.size(); ++col)
    F.add_term(monos[col], kernel[0][col] * inv);
  return F;
}

StructuralData extract_structural_data(const CommPoly& F, int n) {
  StructuralData sd;
  if (F.g_coefficient(n) != CommPoly::constant(CycNum(1)))
    throw StructureError("structural data: coefficient of g^n is not 1");
  if (n % 3 == 0) {
    sd.has_ell = true;
    sd.ell = F.g_coefficient(2 * n / 3).scaled(CycNum(make_rational(1, 3)));
    for (const auto& [m, c] : sd.ell.terms())
      if (m[0] + m[1] + m[2] != 1)
        throw StructureError("structural data: g^(2n/3) coefficient not linear");
    CommPoly three_ell_sq = (sd.ell * sd.ell).scaled(CycNum(3));
    if (F.g_coefficient(n / 3) != three_ell_sq)
      throw StructureError(
          "structural data: g^(n/3) coefficient differs from 3*ell^2");
    for (int k = 1; k < n; ++k) {
      if (k == n / 3 || k == 2 * n / 3) continue;
      if (!F.g_coefficient(k).is_zero())
        throw StructureError("structural data: unexpected g^" +
                             std::to_string(k) + " coefficient");
    }
    sd.alpha = sd.ell.coeff({1, 0, 0, 0});
    CommPoly symm = CommPoly::variable(0) + CommPoly::variable(1) +
                    CommPoly::variable(2);
    if (sd.ell != symm.scaled(sd.alpha))
      throw StructureError("structural data: ell is not alpha*(z1+z2+z3)");
  } else {
    for (int k = 1; k < n; ++k)
      if (!F.g_coefficient(k).is_zero())
        throw StructureError("structural data: unexpected g^" +
                             std::to_string(k) + " coefficient");
  }
  sd.Phi = F.g_coefficient(0);
  for (const auto& [m, c] : sd.Phi.terms())
    if (m[0] + m[1] + m[2] != 3)
      throw StructureError("structural data: constant-in-g part is not cubic");
  return sd;
}

VeroneseData veronese_data(const RewriteSystem<CycNum>& rs,
                           const GoodBasis& basis, const NCPoly<CycNum>& g,
                           int n) {
  if (n % 3 != 0)
    throw DomainError("veronese_data requires 3 | n");
  int s = n / 3;
  VeroneseData vd;
  for (int i = 0; i < 3; ++i)
    vd.u[i] = rs.to_poly(form_power(rs, basis.x[i], s));

  std::vector<CMono> monos = cubic_monomials();
  int dim = static_cast<int>(rs.basis(n).size());
  Matrix<CycNum> mat(dim, static_cast<int>(monos.size()) + 1);
  {
    GradedVec<CycNum> gs = form_power(rs, g, s);
    for (const auto& [row, c] : gs.v) mat.at(row, 0) = c;
  }
  for (size_t col = 0; col < monos.size(); ++col) {
    GradedVec<CycNum> gv = rs.unit();
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < monos[col][i]; ++k) gv = rs.mul_poly(gv, vd.u[i]);
    for (const auto& [row, c] : gv.v)
      mat.at(row, static_cast<int>(col) + 1) = c;
  }
  auto kernel = mat.kernel_basis();
  if (kernel.size() != 1)
    throw StructureError("veronese_data: kernel dimension " +
                         std::to_string(kernel.size()) + ", expected 1");
  if (kernel[0][0].is_zero())
    throw StructureError("veronese_data: relation misses the g^s term");
  CycNum inv = kernel[0][0].inverse();
  for (size_t col = 0; col < monos.size(); ++col)
    vd.f3.add_term(monos[col], kernel[0][col + 1] * inv);
  return vd;
}

bool veronese_check(const RewriteSystem<CycNum>& rs,
                    const std::array<NCPoly<CycNum>, 3>& u, const CommPoly& f3,
                    const NCPoly<CycNum>& g,
                    const std::array<NCPoly<CycNum>, 3>& z, int n) {
  if (n % 3 != 0) return true;
  int s = n / 3;
  NCPoly<CycNum> acc = rs.to_poly(form_power(rs, g, s));
  for (const auto& [m, c] : f3.terms()) {
    GradedVec<CycNum> gv = rs.unit();
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < m[i]; ++k) gv = rs.mul_poly(gv, u[i]);
    acc += rs.to_poly(gv).scaled(c);
  }
  if (!acc.is_zero()) return false;
  for (int i = 0; i < 3; ++i)
    if (rs.to_poly(form_power(rs, u[i], 3)) != z[i]) return false;
  return true;
}

CenterPresentation compute_center(const Params& pr, const CenterOptions& opts) {
  pr.validate();
  int n = sigma_order(pr, opts.order_cap);
  if (n > opts.n_cap)
    throw CapExceededError("compute_center: PI degree " + std::to_string(n) +
                           " exceeds the configured bound " +
                           std::to_string(opts.n_cap));
  RewriteSystem<CycNum> rs({pr.a, pr.b, pr.c}, 3 * n);
  NCPoly<CycNum> g = presentation_g(pr);

  auto families = basis_families();
  std::vector<int> candidates;
  if (n % 3 == 0)
    candidates = {family_for_rho_class(identify_rho(pr, n))};
  else
    candidates = {1, 2, 3, 4};

  std::string witnesses;
  for (int fam : candidates) {
    GoodBasis basis;
    basis.family = fam;
    basis.x = families[fam - 1];
    basis.tau = find_tau(basis.x);
    basis.coeff_matrix = Matrix<CycNum>(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        basis.coeff_matrix.at(i, j) = basis.x[i].coeff(Word(1, kLetters[j]));

    auto zres = central_z(rs, basis, g, n);
    if (!zres) {
      witnesses += "family " + std::to_string(fam) +
                   ": no consistent correction coefficients; ";
      continue;
    }
    try {
      CenterPresentation cp;
      cp.params = pr;
      cp.n = n;
      cp.g = g;
      cp.basis = basis;
      cp.z = zres->z;
      cp.cs = zres->cs;
      cp.F = central_relation_F(rs, cp.z, g, n);
      cp.structure = extract_structural_data(cp.F, n);
      if (cp.F.cycled() != cp.F)
        throw StructureError("relation is not cyclically symmetric");
      if (n % 3 == 0) {
        cp.veronese = veronese_data(rs, basis, g, n);
        if (!veronese_check(rs, cp.veronese->u, cp.veronese->f3, g, cp.z, n))
          throw InternalError("compute_center: Veronese certificate failed");
      }
      return cp;
    } catch (const StructureError& e) {
      witnesses += "family " + std::to_string(fam) + ": " + e.what() + "; ";
    }
  }
  throw StructureError("compute_center: no candidate basis admits the center (" +
                       witnesses + ")");
}

GoodBasis good_basis(const Params& pr, const CenterOptions& opts) {
  return compute_center(pr, opts).basis;
}

}  // namespace skl

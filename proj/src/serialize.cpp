#include "skl/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skl/errors.hpp"

namespace skl {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::detail::exception& e) {
    throw ParseError(std::string("bad JSON document: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("document is missing the '") + key +
                     "' field");
  return *it;
}

int doc_conductor(const Json& j) {
  int m = field(j, "conductor").get<int>();
  if (m <= 0) throw ParseError("conductor must be positive");
  return m;
}

// All scalars are embedded into the document conductor on write, so the
// strings parse back to equal values at that single conductor.
Json cyc_json(const CycNum& v, int m) { return v.embedded(m).str(); }

CycNum cyc_parse(const Json& j, int m) {
  return parse_cyc(j.get<std::string>(), m);
}

Json params_json(const Params& pr, int m) {
  return Json::array(
      {cyc_json(pr.a, m), cyc_json(pr.b, m), cyc_json(pr.c, m)});
}

Params params_parse(const Json& j, int m) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError("params must be a three-element array");
  return Params::make(cyc_parse(j.at(0), m), cyc_parse(j.at(1), m),
                      cyc_parse(j.at(2), m));
}

Json ncpoly_json(const NCPoly<CycNum>& p, int m) {
  Json a = Json::array();
  for (const auto& [w, c] : p.terms())
    a.push_back(Json::array({w, cyc_json(c, m)}));
  return a;
}

NCPoly<CycNum> ncpoly_parse(const Json& j, int m) {
  NCPoly<CycNum> p;
  for (const auto& t : j) {
    Word w = t.at(0).get<std::string>();
    check_word(w);
    p.add_term(w, cyc_parse(t.at(1), m));
  }
  return p;
}

Json commpoly_json(const CommPoly& p, int m) {
  Json a = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json e = Json::array({mono[0], mono[1], mono[2], mono[3]});
    a.push_back(Json::array({e, cyc_json(c, m)}));
  }
  return a;
}

CommPoly commpoly_parse(const Json& j, int m) {
  CommPoly p;
  for (const auto& t : j) {
    const Json& e = t.at(0);
    if (!e.is_array() || e.size() != 4)
      throw ParseError("monomial exponent must be a four-element array");
    CMono mono{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
               e.at(3).get<int>()};
    p.add_term(mono, cyc_parse(t.at(1), m));
  }
  return p;
}

Json matrix_json(const Matrix<CycNum>& mat, int m) {
  Json rows = Json::array();
  for (int i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < mat.cols(); ++j) row.push_back(cyc_json(mat.at(i, j), m));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<CycNum> matrix_parse(const Json& j, int m) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j.at(0).size());
  Matrix<CycNum> mat(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (static_cast<int>(row.size()) != cols)
      throw ParseError("matrix rows have inconsistent lengths");
    for (int c = 0; c < cols; ++c) mat.at(i, c) = cyc_parse(row.at(c), m);
  }
  return mat;
}

Json ypoint_json(const YPoint& p, int m) {
  Json a = Json::array();
  for (int i = 0; i < 4; ++i) a.push_back(cyc_json(p.y[i], m));
  return a;
}

YPoint ypoint_parse(const Json& j, int m) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError("point must be a four-element array");
  return YPoint::make(cyc_parse(j.at(0), m), cyc_parse(j.at(1), m),
                      cyc_parse(j.at(2), m), cyc_parse(j.at(3), m));
}

StratumTag stratum_parse(const std::string& name) {
  if (name == "Y1") return StratumTag::kY1;
  if (name == "Y2") return StratumTag::kY2;
  if (name == "Y3") return StratumTag::kY3;
  if (name == "Y4") return StratumTag::kY4;
  throw ParseError("unknown stratum tag '" + name + "'");
}

}  // namespace

std::string center_document(const CenterPresentation& cp) {
  const int m = cp.params.conductor();
  Json j;
  j["conductor"] = m;
  j["params"] = params_json(cp.params, m);
  j["n"] = cp.n;
  j["g"] = ncpoly_json(cp.g, m);
  Json basis;
  basis["family"] = cp.basis.family;
  basis["tau"] = Json::array(
      {cp.basis.tau.e1, cp.basis.tau.e2, cp.basis.tau.e3});
  basis["matrix"] = matrix_json(cp.basis.coeff_matrix, m);
  j["basis"] = std::move(basis);
  Json zs = Json::array();
  for (const auto& z : cp.z) zs.push_back(ncpoly_json(z, m));
  j["z"] = std::move(zs);
  Json cs = Json::array();
  for (const auto& c : cp.cs) cs.push_back(cyc_json(c, m));
  j["cs"] = std::move(cs);
  j["F"] = commpoly_json(cp.F, m);
  Json st;
  st["has_ell"] = cp.structure.has_ell;
  st["alpha"] = cyc_json(cp.structure.alpha, m);
  st["ell"] = commpoly_json(cp.structure.ell, m);
  st["Phi"] = commpoly_json(cp.structure.Phi, m);
  j["structure"] = std::move(st);
  if (cp.veronese) {
    Json v;
    Json us = Json::array();
    for (const auto& u : cp.veronese->u) us.push_back(ncpoly_json(u, m));
    v["u"] = std::move(us);
    v["f3"] = commpoly_json(cp.veronese->f3, m);
    j["veronese"] = std::move(v);
  } else {
    j["veronese"] = nullptr;
  }
  return dump(j);
}

CenterPresentation parse_center_document(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  CenterPresentation cp;
  cp.params = params_parse(field(j, "params"), m);
  cp.n = field(j, "n").get<int>();
  cp.g = ncpoly_parse(field(j, "g"), m);
  const Json& basis = field(j, "basis");
  cp.basis.family = field(basis, "family").get<int>();
  const Json& tau = field(basis, "tau");
  cp.basis.tau = H3Element::make(tau.at(0).get<int>(), tau.at(1).get<int>(),
                                 tau.at(2).get<int>());
  cp.basis.coeff_matrix = matrix_parse(field(basis, "matrix"), m);
  if (cp.basis.coeff_matrix.rows() != 3 || cp.basis.coeff_matrix.cols() != 3)
    throw ParseError("basis matrix must be 3x3");
  for (int i = 0; i < 3; ++i) {
    NCPoly<CycNum> xi;
    for (int c = 0; c < 3; ++c)
      xi += NCPoly<CycNum>::generator(c).scaled(cp.basis.coeff_matrix.at(i, c));
    cp.basis.x[i] = std::move(xi);
  }
  const Json& zs = field(j, "z");
  if (zs.size() != 3) throw ParseError("z must list three polynomials");
  for (int i = 0; i < 3; ++i) cp.z[i] = ncpoly_parse(zs.at(i), m);
  for (const auto& c : field(j, "cs")) cp.cs.push_back(cyc_parse(c, m));
  cp.F = commpoly_parse(field(j, "F"), m);
  const Json& st = field(j, "structure");
  cp.structure.has_ell = field(st, "has_ell").get<bool>();
  cp.structure.alpha = cyc_parse(field(st, "alpha"), m);
  cp.structure.ell = commpoly_parse(field(st, "ell"), m);
  cp.structure.Phi = commpoly_parse(field(st, "Phi"), m);
  const Json& ver = field(j, "veronese");
  if (!ver.is_null()) {
    VeroneseData vd;
    const Json& us = field(ver, "u");
    if (us.size() != 3) throw ParseError("veronese u must list three polynomials");
    for (int i = 0; i < 3; ++i) vd.u[i] = ncpoly_parse(us.at(i), m);
    vd.f3 = commpoly_parse(field(ver, "f3"), m);
    cp.veronese = std::move(vd);
  }
  return cp;
}

std::string poisson_document(const Params& pr, const PoissonStructure& ps) {
  const int m = pr.conductor();
  Json j;
  j["conductor"] = m;
  j["params"] = params_json(pr, m);
  j["n"] = ps.n;
  j["F"] = commpoly_json(ps.F, m);
  Json br = Json::array();
  for (const auto& b : ps.br) br.push_back(commpoly_json(b, m));
  j["brackets"] = std::move(br);
  return dump(j);
}

PoissonDoc parse_poisson_document(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  PoissonDoc doc;
  doc.params = params_parse(field(j, "params"), m);
  doc.structure.n = field(j, "n").get<int>();
  doc.structure.F = commpoly_parse(field(j, "F"), m);
  const Json& br = field(j, "brackets");
  if (br.size() != 3) throw ParseError("brackets must list three polynomials");
  for (int i = 0; i < 3; ++i) doc.structure.br[i] = commpoly_parse(br.at(i), m);
  return doc;
}

std::string specialization_document(const CenterPresentation& cp,
                                    const Direction& dir,
                                    const PoissonOrderResult& result,
                                    const EtaReport& eta) {
  const int m = cp.params.conductor();
  Json j;
  j["conductor"] = m;
  j["params"] = params_json(cp.params, m);
  j["n"] = cp.n;
  j["direction"] = dir.str();
  j["level"] = result.level;
  j["iterations"] = result.iterations;
  Json br = Json::array();
  for (const auto& b : result.brackets) br.push_back(commpoly_json(b, m));
  j["brackets"] = std::move(br);
  Json der;
  der["level"] = result.derivations.level;
  Json entries = Json::array();
  for (const auto& row : result.derivations.d) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(ncpoly_json(p, m));
    entries.push_back(std::move(r));
  }
  der["entries"] = std::move(entries);
  j["derivations"] = std::move(der);
  j["eta_matches"] = eta.matches;
  j["eta"] = cyc_json(eta.eta, m);
  return dump(j);
}

SpecializationDoc parse_specialization_document(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  SpecializationDoc doc;
  doc.params = params_parse(field(j, "params"), m);
  doc.n = field(j, "n").get<int>();
  doc.direction = Direction::parse(field(j, "direction").get<std::string>(), m);
  doc.level = field(j, "level").get<int>();
  doc.iterations = field(j, "iterations").get<int>();
  const Json& br = field(j, "brackets");
  if (br.size() != 3) throw ParseError("brackets must list three polynomials");
  for (int i = 0; i < 3; ++i) doc.brackets[i] = commpoly_parse(br.at(i), m);
  const Json& der = field(j, "derivations");
  doc.derivations.level = field(der, "level").get<int>();
  const Json& entries = field(der, "entries");
  if (entries.size() != 4 || entries.at(0).size() != 3)
    throw ParseError("derivation table must be 4 x 3");
  for (int s = 0; s < 4; ++s)
    for (int w = 0; w < 3; ++w)
      doc.derivations.d[s][w] = ncpoly_parse(entries.at(s).at(w), m);
  doc.eta_matches = field(j, "eta_matches").get<bool>();
  doc.eta = cyc_parse(field(j, "eta"), m);
  return doc;
}

std::string classify_document(const CenterPresentation& cp, const YPoint& p) {
  const int m = cp.params.conductor();
  Stratum s = classify_stratum(cp, p);
  Json j;
  j["conductor"] = m;
  j["params"] = params_json(cp.params, m);
  j["point"] = ypoint_json(p, m);
  j["stratum"] = to_string(s.tag);
  j["core"] = s.core_str();
  j["azumaya"] = azumaya_test(cp, p);
  j["expected_dims"] = expected_irrep_profile(cp, p);
  return dump(j);
}

ClassifyDoc parse_classify_document(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  ClassifyDoc doc;
  doc.point = ypoint_parse(field(j, "point"), m);
  doc.stratum = field(j, "stratum").get<std::string>();
  stratum_parse(doc.stratum);  // validate
  doc.core = field(j, "core").get<std::string>();
  doc.azumaya = field(j, "azumaya").get<bool>();
  for (const auto& d : field(j, "expected_dims"))
    doc.expected_dims.push_back(d.get<int>());
  return doc;
}

std::string rep_file_document(const RepFile& rf) {
  rf.rep.validate();
  const int m = rf.conductor;
  Json j;
  j["conductor"] = m;
  j["params"] = params_json(rf.params, m);
  j["basis"] = rf.rep.basis;
  if (rf.rep.basis_matrix)
    j["basis_matrix"] = matrix_json(*rf.rep.basis_matrix, m);
  Json mats = Json::array();
  for (const auto& img : rf.rep.images) mats.push_back(matrix_json(img, m));
  j["matrices"] = std::move(mats);
  return dump(j);
}

RepFile parse_rep_file(const std::string& text) {
  Json j = parse_json(text);
  RepFile rf;
  rf.conductor = doc_conductor(j);
  rf.params = params_parse(field(j, "params"), rf.conductor);
  MatrixRep rep;
  rep.basis = field(j, "basis").get<std::string>();
  if (j.contains("basis_matrix"))
    rep.basis_matrix = matrix_parse(j.at("basis_matrix"), rf.conductor);
  const Json& mats = field(j, "matrices");
  if (mats.size() != 3)
    throw ParseError("a module needs exactly three generator images");
  for (int i = 0; i < 3; ++i)
    rep.images[i] = matrix_parse(mats.at(i), rf.conductor);
  rep.dim = rep.images[0].rows();
  rep.validate();
  rf.rep = std::move(rep);
  return rf;
}

RepFile load_rep_file(const std::string& path) {
  return parse_rep_file(read_file(path));
}

std::string rep_report_document(int conductor, const RepReport& report) {
  Json j;
  j["conductor"] = conductor;
  j["relations_ok"] = report.relations_ok;
  j["character"] = ypoint_json(report.character, conductor);
  j["span_dimension"] = report.span_dimension;
  j["irreducible"] = report.irreducible;
  j["stratum"] = to_string(report.stratum);
  j["stratum_consistent"] = report.stratum_consistent;
  return dump(j);
}

RepReport parse_rep_report(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  RepReport r;
  r.relations_ok = field(j, "relations_ok").get<bool>();
  r.character = ypoint_parse(field(j, "character"), m);
  r.span_dimension = field(j, "span_dimension").get<int>();
  r.irreducible = field(j, "irreducible").get<bool>();
  r.stratum = stratum_parse(field(j, "stratum").get<std::string>());
  r.stratum_consistent = field(j, "stratum_consistent").get<bool>();
  return r;
}

std::string profile_document(int conductor, const ProfileCheck& check) {
  Json j;
  j["conductor"] = conductor;
  j["ok"] = check.ok;
  j["character"] = ypoint_json(check.character, conductor);
  j["class_dims"] = check.class_dims;
  j["expected"] = check.expected;
  j["sum_squares"] = check.sum_squares;
  j["expected_sum_squares"] = check.expected_sum_squares;
  return dump(j);
}

ProfileCheck parse_profile_document(const std::string& text) {
  Json j = parse_json(text);
  const int m = doc_conductor(j);
  ProfileCheck c;
  c.ok = field(j, "ok").get<bool>();
  c.character = ypoint_parse(field(j, "character"), m);
  for (const auto& d : field(j, "class_dims")) c.class_dims.push_back(d.get<int>());
  for (const auto& d : field(j, "expected")) c.expected.push_back(d.get<int>());
  c.sum_squares = field(j, "sum_squares").get<long>();
  c.expected_sum_squares = field(j, "expected_sum_squares").get<long>();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open file for writing: " + path);
  out << bytes;
  if (!out) throw DomainError("failed writing file: " + path);
}

}  // namespace skl

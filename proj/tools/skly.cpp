// Command-line front end for the Sklyanin toolkit.
//
// Every subcommand prints a canonical document (JSON, or SVG for `figure`)
// to stdout; `--out FILE` additionally writes the same bytes to FILE.
// Output is deterministic: the same invocation always produces the same
// bytes.  Exit codes: 0 on success, 1 on a library error (message on
// stderr), 2 on a usage error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "skl/center.hpp"
#include "skl/curve.hpp"
#include "skl/errors.hpp"
#include "skl/poisson.hpp"
#include "skl/reps.hpp"
#include "skl/rewrite.hpp"
#include "skl/serialize.hpp"
#include "skl/specialize.hpp"
#include "skl/strata.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace skl;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json params_array(const Params& pr, int m) {
  return Json::array({pr.a.embedded(m).str(), pr.b.embedded(m).str(),
                      pr.c.embedded(m).str()});
}

// Shared per-subcommand state.  CLI11 fills these during parse; the selected
// subcommand's callback computes the output bytes.
struct Cli {
  std::string params_text;
  int conductor = 12;
  int order_cap = 12;
  int degree_cap = -1;  // < 0 means "derive from the order"
  int level_cap = 25;
  std::string direction_text;
  std::string point_text;
  std::string gamma_text;
  long k = 1;
  std::string file;
  std::string out_path;

  std::string bytes;  // result document, emitted after parse succeeds
};

Params parse_params(const Cli& c) {
  return Params::parse(c.params_text, c.conductor);
}

CenterPresentation center_of(const Cli& c) {
  CenterOptions opts;
  opts.order_cap = c.order_cap;
  return compute_center(parse_params(c), opts);
}

void add_params_opts(CLI::App* sub, Cli& c) {
  sub->add_option("--params", c.params_text,
                  "algebra parameters \"a,b,c\" (cyclotomic expressions)")
      ->required();
  sub->add_option("--conductor", c.conductor,
                  "cyclotomic conductor for scalar input/output")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--order-cap", c.order_cap,
                  "largest automorphism order to search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_output_opts(CLI::App* sub, Cli& c, bool json_flag = true) {
  sub->add_option("--out", c.out_path, "also write the output bytes to FILE");
  if (json_flag)
    sub->add_flag("--json", "emit JSON (default; kept for compatibility)");
}

void run_sigma_order(Cli& c) {
  Params pr = parse_params(c);
  int n = sigma_order(pr, c.order_cap);
  Json j;
  j["conductor"] = c.conductor;
  j["params"] = params_array(pr, c.conductor);
  j["order"] = n;
  c.bytes = dump(j);
}

void run_hilbert(Cli& c) {
  Params pr = parse_params(c);
  int cap = c.degree_cap;
  if (cap < 0) cap = 3 * sigma_order(pr, c.order_cap) + 2;
  RewriteSystem<CycNum> rs({pr.a, pr.b, pr.c}, cap);
  Json j;
  j["conductor"] = c.conductor;
  j["params"] = params_array(pr, c.conductor);
  j["degree_cap"] = cap;
  j["dims"] = rs.hilbert_dims();
  c.bytes = dump(j);
}

void run_center(Cli& c) { c.bytes = center_document(center_of(c)); }

void run_bracket(Cli& c) {
  CenterPresentation cp = center_of(c);
  c.bytes = poisson_document(cp.params, bracket_from_F(cp.F, cp.n));
}

void run_jacobi(Cli& c) {
  CenterPresentation cp = center_of(c);
  PoissonStructure ps = bracket_from_F(cp.F, cp.n);
  std::vector<CommPoly> res = jacobi_residues(ps);
  bool jacobi_ok = true;
  Json res_json = Json::array();
  for (const CommPoly& r : res) {
    jacobi_ok = jacobi_ok && r.is_zero();
    res_json.push_back(r.str());
  }
  CommPoly euler = weighted_euler_residue(cp.F, cp.n);
  bool center_ok = true;
  for (int i = 0; i < 3; ++i) {
    CommPoly br =
        poisson_bracket(ps, CommPoly::variable(3), CommPoly::variable(i));
    center_ok = center_ok && br.is_zero();
  }
  int m = cp.params.conductor();
  Json j;
  j["conductor"] = m;
  j["params"] = params_array(cp.params, m);
  j["n"] = cp.n;
  j["jacobi_ok"] = jacobi_ok;
  j["jacobi_residues"] = res_json;
  j["euler_ok"] = euler.is_zero();
  j["euler_residue"] = euler.str();
  j["g_bracket_ok"] = center_ok;
  c.bytes = dump(j);
}

void run_specialize(Cli& c) {
  CenterPresentation cp = center_of(c);
  Direction dir = Direction::parse(c.direction_text, c.conductor);
  HbarAlgebra alg = make_hbar_algebra(cp, dir, c.order_cap);
  if (!alg.direction_generic)
    throw DomainError("direction " + dir.str() +
                      " does not keep the automorphism order finite and "
                      "constant; choose a different direction");
  PoissonOrderResult result = maximize_level(alg, c.level_cap);
  EtaReport eta = compare_to_dF(result.brackets, cp.F, cp.n);
  c.bytes = specialization_document(cp, dir, result, eta);
}

void run_classify(Cli& c) {
  CenterPresentation cp = center_of(c);
  YPoint p = YPoint::parse(c.point_text, cp.params.conductor());
  c.bytes = classify_document(cp, p);
}

void run_slice_singulars(Cli& c) {
  CenterPresentation cp = center_of(c);
  int m = cp.params.conductor();
  CycNum gamma = parse_cyc(c.gamma_text, m);
  std::vector<YPoint> pts = slice_singulars(cp, gamma);
  Json arr = Json::array();
  for (const YPoint& p : pts) {
    Json coords = Json::array();
    for (int i = 0; i < 4; ++i) coords.push_back(p.y[i].embedded(m).str());
    arr.push_back(coords);
  }
  Json j;
  j["conductor"] = m;
  j["params"] = params_array(cp.params, m);
  j["n"] = cp.n;
  j["gamma"] = gamma.embedded(m).str();
  j["singular_points"] = arr;
  c.bytes = dump(j);
}

void run_verify_rep(Cli& c) {
  RepFile rf = load_rep_file(c.file);
  CenterOptions opts;
  opts.order_cap = c.order_cap;
  CenterPresentation cp = compute_center(rf.params, opts);
  RepReport report = analyze_rep(rf.rep, cp);
  c.bytes = rep_report_document(rf.conductor, report);
}

void run_discriminant(Cli& c) {
  CenterPresentation cp = center_of(c);
  if (c.k < 1 || c.k > static_cast<long>(cp.n) * cp.n)
    throw DomainError("k must lie between 1 and n^2 = " +
                      std::to_string(static_cast<long>(cp.n) * cp.n));
  ZeroSetKind kind = discriminant_zero_set(cp, c.k);
  int m = cp.params.conductor();
  Json j;
  j["conductor"] = m;
  j["params"] = params_array(cp.params, m);
  j["n"] = cp.n;
  j["k"] = c.k;
  j["zero_set"] = to_string(kind);
  c.bytes = dump(j);
}

void run_figure(Cli& c) { c.bytes = figure_svg(center_of(c)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skly: exact computations for a three-parameter family of graded "
      "algebras (center, Poisson structure, stratification, "
      "representations)"};
  app.require_subcommand(1);
  Cli c;

  CLI::App* so = app.add_subcommand(
      "sigma-order", "order of the translation automorphism (= PI degree)");
  add_params_opts(so, c);
  add_output_opts(so, c);
  so->callback([&c] { run_sigma_order(c); });

  CLI::App* hi = app.add_subcommand(
      "hilbert", "graded dimensions of the algebra up to a degree cap");
  add_params_opts(hi, c);
  hi->add_option("--degree-cap", c.degree_cap,
                 "largest degree to tabulate (default 3n+2)")
      ->check(CLI::NonNegativeNumber);
  add_output_opts(hi, c);
  hi->callback([&c] { run_hilbert(c); });

  CLI::App* ce = app.add_subcommand(
      "center", "generators and relation of the center");
  add_params_opts(ce, c);
  add_output_opts(ce, c);
  ce->callback([&c] { run_center(c); });

  CLI::App* br = app.add_subcommand(
      "bracket", "Poisson structure induced on the center's coordinate ring");
  add_params_opts(br, c);
  add_output_opts(br, c);
  br->callback([&c] { run_bracket(c); });

  CLI::App* ja = app.add_subcommand(
      "jacobi", "residue checks for the induced Poisson structure");
  add_params_opts(ja, c);
  add_output_opts(ja, c);
  ja->callback([&c] { run_jacobi(c); });

  CLI::App* sp = app.add_subcommand(
      "specialize",
      "deform along a parameter direction and extract the induced brackets");
  add_params_opts(sp, c);
  sp->add_option("--direction", c.direction_text,
                 "deformation direction \"da,db,dc\"")
      ->required();
  sp->add_option("--level-cap", c.level_cap,
                 "largest vanishing order to certify")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_opts(sp, c);
  sp->callback([&c] { run_specialize(c); });

  CLI::App* cl = app.add_subcommand(
      "classify", "stratum of a point of the center's maximal spectrum");
  add_params_opts(cl, c);
  cl->add_option("--point", c.point_text, "point \"z1,z2,z3,g\"")->required();
  add_output_opts(cl, c);
  cl->callback([&c] { run_classify(c); });

  CLI::App* sl = app.add_subcommand(
      "slice-singulars", "singular points of the slice g = gamma");
  add_params_opts(sl, c);
  sl->add_option("--gamma", c.gamma_text, "value of g cutting the slice")
      ->required();
  add_output_opts(sl, c);
  sl->callback([&c] { run_slice_singulars(c); });

  CLI::App* vr = app.add_subcommand(
      "verify-rep", "check a matrix representation file and classify it");
  vr->add_option("--file", c.file, "representation file (JSON)")->required();
  vr->add_option("--order-cap", c.order_cap,
                 "largest automorphism order to search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_opts(vr, c);
  vr->callback([&c] { run_verify_rep(c); });

  CLI::App* di = app.add_subcommand(
      "discriminant", "zero set of the k-th discriminant ideal");
  add_params_opts(di, c);
  di->add_option("--k", c.k, "discriminant index (1 <= k <= n^2)")->required();
  add_output_opts(di, c);
  di->callback([&c] { run_discriminant(c); });

  CLI::App* fi = app.add_subcommand(
      "figure", "SVG sketch of the singular locus and strata");
  add_params_opts(fi, c);
  add_output_opts(fi, c, /*json_flag=*/false);
  fi->callback([&c] { run_figure(c); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!c.out_path.empty()) write_file(c.out_path, c.bytes);
    std::cout << c.bytes;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

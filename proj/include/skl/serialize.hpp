#pragma once

#include <string>
#include <vector>

#include "skl/center.hpp"
#include "skl/poisson.hpp"
#include "skl/reps.hpp"
#include "skl/specialize.hpp"
#include "skl/strata.hpp"

namespace skl {

// JSON documents with canonical bytes: keys in a fixed order, two-space
// indentation, one trailing newline, scalars as exact expression strings,
// and the cyclotomic conductor carried in the document header.  Every
// emitter has a parser and parse(emit(v)) reproduces v exactly.

std::string center_document(const CenterPresentation& cp);
CenterPresentation parse_center_document(const std::string& text);

struct PoissonDoc {
  Params params;
  PoissonStructure structure;
};
std::string poisson_document(const Params& pr, const PoissonStructure& ps);
PoissonDoc parse_poisson_document(const std::string& text);

struct SpecializationDoc {
  Params params;
  int n = 0;
  Direction direction;
  int level = 0;
  int iterations = 0;
  std::array<CommPoly, 3> brackets;
  DerivationTable derivations;
  bool eta_matches = false;
  CycNum eta;
};
std::string specialization_document(const CenterPresentation& cp,
                                    const Direction& dir,
                                    const PoissonOrderResult& result,
                                    const EtaReport& eta);
SpecializationDoc parse_specialization_document(const std::string& text);

struct ClassifyDoc {
  YPoint point;
  std::string stratum;
  std::string core;
  bool azumaya = false;
  std::vector<int> expected_dims;
};
std::string classify_document(const CenterPresentation& cp, const YPoint& p);
ClassifyDoc parse_classify_document(const std::string& text);

// Module input file: {conductor, params, basis, basis_matrix?, matrices};
// matrices are rows of scalar strings, one block per stated generator.
struct RepFile {
  int conductor = 12;
  Params params;
  MatrixRep rep;
};
std::string rep_file_document(const RepFile& rf);
RepFile parse_rep_file(const std::string& text);
RepFile load_rep_file(const std::string& path);

std::string rep_report_document(int conductor, const RepReport& report);
RepReport parse_rep_report(const std::string& text);

std::string profile_document(int conductor, const ProfileCheck& check);
ProfileCheck parse_profile_document(const std::string& text);

// Byte-level file helpers shared by the command-line driver and tests.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace skl

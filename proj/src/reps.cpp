#include "skl/reps.hpp"

#include <algorithm>
#include <utility>

#include "skl/errors.hpp"

namespace skl {

namespace {

// Incremental row-echelon span of coordinate vectors over the cyclotomic
// field.  Rows keep distinct pivot columns, each normalized to 1; a new
// vector is reduced against the rows in insertion order (sound because
// every row has zeros at all other rows' pivots by induction).
class VectorSpan {
 public:
  explicit VectorSpan(int width) : width_(width) {}

  int dimension() const { return static_cast<int>(rows_.size()); }

  // Reduces v against the span; returns true when v enlarged it.
  bool insert(std::vector<CycNum> v) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      CycNum lead = v[pivots_[r]];
      if (is_zero(lead)) continue;
      const std::vector<CycNum>& row = rows_[r];
      for (int j = 0; j < width_; ++j) {
        if (!is_zero(row[j])) v[j] -= lead * row[j];
      }
    }
    int p = -1;
    for (int j = 0; j < width_; ++j) {
      if (!is_zero(v[j])) {
        p = j;
        break;
      }
    }
    if (p < 0) return false;
    CycNum inv = v[p].inverse();
    for (int j = p; j < width_; ++j) v[j] = v[j] * inv;
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  int width_;
  std::vector<int> pivots_;
  std::vector<std::vector<CycNum>> rows_;
};

std::vector<CycNum> flatten(const Matrix<CycNum>& m) {
  std::vector<CycNum> v;
  v.reserve(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

std::vector<CycNum> flatten_pair(const Matrix<CycNum>& a,
                                 const Matrix<CycNum>& b) {
  std::vector<CycNum> v = flatten(a);
  std::vector<CycNum> w = flatten(b);
  v.insert(v.end(), std::make_move_iterator(w.begin()),
           std::make_move_iterator(w.end()));
  return v;
}

}  // namespace

MatrixRep MatrixRep::standard(std::array<Matrix<CycNum>, 3> images) {
  MatrixRep rep;
  rep.dim = images[0].rows();
  rep.basis = "standard";
  rep.images = std::move(images);
  rep.validate();
  return rep;
}

MatrixRep MatrixRep::in_basis(std::array<Matrix<CycNum>, 3> images,
                              Matrix<CycNum> basis_matrix) {
  MatrixRep rep;
  rep.dim = images[0].rows();
  rep.basis = "good";
  rep.images = std::move(images);
  rep.basis_matrix = std::move(basis_matrix);
  rep.validate();
  return rep;
}

void MatrixRep::validate() const {
  if (dim <= 0) throw DomainError("module dimension must be positive");
  for (const auto& m : images) {
    if (m.rows() != dim || m.cols() != dim)
      throw DomainError("generator image is not a " + std::to_string(dim) +
                        "x" + std::to_string(dim) + " matrix");
  }
  if (basis == "standard") {
    if (basis_matrix)
      throw DomainError("standard-basis input must not carry a basis matrix");
  } else if (basis == "good") {
    if (!basis_matrix)
      throw DomainError("cyclic-basis input requires the 3x3 basis matrix");
    if (basis_matrix->rows() != 3 || basis_matrix->cols() != 3)
      throw DomainError("basis matrix must be 3x3");
  } else {
    throw DomainError("unknown basis tag '" + basis + "'");
  }
}

std::array<Matrix<CycNum>, 3> standard_images(const MatrixRep& rep) {
  rep.validate();
  if (rep.basis == "standard") return rep.images;
  std::optional<Matrix<CycNum>> inv = rep.basis_matrix->inverse();
  if (!inv) throw DomainError("basis matrix is singular");
  std::array<Matrix<CycNum>, 3> out;
  for (int j = 0; j < 3; ++j) {
    Matrix<CycNum> acc(rep.dim, rep.dim);
    for (int i = 0; i < 3; ++i) acc = acc + rep.images[i].scaled(inv->at(j, i));
    out[j] = std::move(acc);
  }
  return out;
}

Matrix<CycNum> eval_on_images(const NCPoly<CycNum>& p,
                              const std::array<Matrix<CycNum>, 3>& imgs,
                              int dim) {
  Matrix<CycNum> acc(dim, dim);
  for (const auto& [w, c] : p.terms()) {
    Matrix<CycNum> m = Matrix<CycNum>::identity(dim);
    for (char ch : w) m = m * imgs[letter_index(ch)];
    acc = acc + m.scaled(c);
  }
  return acc;
}

std::array<NCPoly<CycNum>, 3> defining_relations(const Params& pr) {
  auto mk = [&](const char* w1, const char* w2, const char* w3) {
    NCPoly<CycNum> p;
    p.add_term(w1, pr.a);
    p.add_term(w2, pr.b);
    p.add_term(w3, pr.c);
    return p;
  };
  return {mk("yz", "zy", "xx"), mk("zx", "xz", "yy"), mk("xy", "yx", "zz")};
}

RelationCheck verify_relations(const MatrixRep& rep, const Params& pr) {
  std::array<Matrix<CycNum>, 3> imgs = standard_images(rep);
  std::array<NCPoly<CycNum>, 3> rels = defining_relations(pr);
  RelationCheck out;
  out.ok = true;
  for (int k = 0; k < 3; ++k) {
    out.residues[k] = eval_on_images(rels[k], imgs, rep.dim);
    if (!out.residues[k].is_zero_matrix()) out.ok = false;
  }
  return out;
}

YPoint central_character(const MatrixRep& rep, const CenterPresentation& cp) {
  std::array<Matrix<CycNum>, 3> imgs = standard_images(rep);
  std::array<CycNum, 4> vals;
  for (int i = 0; i < 3; ++i) {
    Matrix<CycNum> m = eval_on_images(cp.z[i], imgs, rep.dim);
    std::optional<CycNum> s = m.as_scalar();
    if (!s)
      throw DomainError("central generator z" + std::to_string(i + 1) +
                        " acts by a non-scalar matrix");
    vals[i] = *s;
  }
  Matrix<CycNum> mg = eval_on_images(cp.g, imgs, rep.dim);
  std::optional<CycNum> sg = mg.as_scalar();
  if (!sg) throw DomainError("central generator g acts by a non-scalar matrix");
  return YPoint::make(vals[0], vals[1], vals[2], *sg);
}

int image_span_dimension(const MatrixRep& rep) {
  const int d = rep.dim;
  std::array<Matrix<CycNum>, 3> imgs = standard_images(rep);
  VectorSpan span(d * d);
  std::vector<Matrix<CycNum>> frontier;
  Matrix<CycNum> id = Matrix<CycNum>::identity(d);
  span.insert(flatten(id));
  frontier.push_back(std::move(id));
  // Each frontier element enlarged the span, so the total number of
  // accepted matrices (and hence of rounds) is bounded by d^2.
  while (!frontier.empty()) {
    std::vector<Matrix<CycNum>> next;
    for (const Matrix<CycNum>& m : frontier) {
      for (int g = 0; g < 3; ++g) {
        Matrix<CycNum> prod = m * imgs[g];
        if (span.insert(flatten(prod))) next.push_back(std::move(prod));
      }
    }
    frontier = std::move(next);
  }
  return span.dimension();
}

bool burnside_irreducible(const MatrixRep& rep) {
  return image_span_dimension(rep) == rep.dim * rep.dim;
}

MatrixRep twist(const MatrixRep& rep, const CycNum& lambda) {
  rep.validate();
  if (is_zero(lambda)) throw DomainError("twist scalar must be nonzero");
  MatrixRep out = rep;
  for (Matrix<CycNum>& m : out.images) m = m.scaled(lambda);
  return out;
}

bool iso_test(const MatrixRep& r1, const MatrixRep& r2) {
  r1.validate();
  r2.validate();
  if (r1.dim != r2.dim) return false;
  const int d = r1.dim;
  std::array<Matrix<CycNum>, 3> a = standard_images(r1);
  std::array<Matrix<CycNum>, 3> b = standard_images(r2);
  // Traces of dependent word pairs are forced by linearity, so checking
  // every candidate while closing the joint span covers all words up to
  // the stabilization length.
  VectorSpan span(2 * d * d);
  std::vector<std::pair<Matrix<CycNum>, Matrix<CycNum>>> frontier;
  Matrix<CycNum> id = Matrix<CycNum>::identity(d);
  span.insert(flatten_pair(id, id));
  frontier.emplace_back(id, id);
  while (!frontier.empty()) {
    std::vector<std::pair<Matrix<CycNum>, Matrix<CycNum>>> next;
    for (const auto& [A, B] : frontier) {
      for (int g = 0; g < 3; ++g) {
        Matrix<CycNum> A2 = A * a[g];
        Matrix<CycNum> B2 = B * b[g];
        if (!(A2.trace() == B2.trace())) return false;
        if (span.insert(flatten_pair(A2, B2)))
          next.emplace_back(std::move(A2), std::move(B2));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

bool conjugator_search(const MatrixRep& r1, const MatrixRep& r2) {
  r1.validate();
  r2.validate();
  if (r1.dim != r2.dim) return false;
  const int d = r1.dim;
  std::array<Matrix<CycNum>, 3> a = standard_images(r1);
  std::array<Matrix<CycNum>, 3> b = standard_images(r2);
  // Unknown T as a d^2-vector, entry (r, s) at index r*d + s; the equation
  // T a_g = b_g T reads sum_s T[p][s] a_g[s][q] - sum_r b_g[p][r] T[r][q].
  Matrix<CycNum> sys(3 * d * d, d * d);
  int row = 0;
  for (int g = 0; g < 3; ++g) {
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) {
        for (int s = 0; s < d; ++s) sys.at(row, p * d + s) += a[g].at(s, q);
        for (int r = 0; r < d; ++r) sys.at(row, r * d + q) -= b[g].at(p, r);
        ++row;
      }
    }
  }
  std::vector<std::vector<CycNum>> kernel = sys.kernel_basis();
  auto unflatten = [d](const std::vector<CycNum>& v) {
    Matrix<CycNum> m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = v[i * d + j];
    return m;
  };
  auto invertible = [](const Matrix<CycNum>& m) { return !is_zero(m.det()); };
  for (const auto& v : kernel) {
    if (invertible(unflatten(v))) return true;
  }
  for (size_t i = 0; i < kernel.size(); ++i) {
    for (size_t j = i + 1; j < kernel.size(); ++j) {
      std::vector<CycNum> sum = kernel[i];
      for (size_t k = 0; k < sum.size(); ++k) sum[k] += kernel[j][k];
      if (invertible(unflatten(sum))) return true;
    }
  }
  return false;
}

RepReport analyze_rep(const MatrixRep& rep, const CenterPresentation& cp) {
  RepReport report;
  report.relations_ok = verify_relations(rep, cp.params).ok;
  if (!report.relations_ok) return report;
  report.character = central_character(rep, cp);
  report.span_dimension = image_span_dimension(rep);
  report.irreducible = report.span_dimension == rep.dim * rep.dim;
  report.stratum = classify_stratum(cp, report.character).tag;
  std::vector<int> profile = expected_irrep_profile(cp, report.character);
  report.stratum_consistent =
      report.irreducible &&
      std::find(profile.begin(), profile.end(), rep.dim) != profile.end();
  return report;
}

ProfileCheck profile_consistency(const std::vector<MatrixRep>& reps,
                                 const CenterPresentation& cp) {
  if (reps.empty()) throw DomainError("profile check needs at least one module");
  ProfileCheck out;
  out.character = central_character(reps[0], cp);
  for (size_t i = 1; i < reps.size(); ++i) {
    if (!(central_character(reps[i], cp) == out.character))
      throw DomainError("profile check requires a shared central character");
  }
  std::vector<size_t> class_reps;
  for (size_t i = 0; i < reps.size(); ++i) {
    bool known = false;
    for (size_t r : class_reps) {
      if (iso_test(reps[i], reps[r])) {
        known = true;
        break;
      }
    }
    if (!known) class_reps.push_back(i);
  }
  for (size_t r : class_reps) out.class_dims.push_back(reps[r].dim);
  std::sort(out.class_dims.begin(), out.class_dims.end());
  out.expected = expected_irrep_profile(cp, out.character);
  std::sort(out.expected.begin(), out.expected.end());
  for (int d : out.class_dims) out.sum_squares += static_cast<long>(d) * d;
  for (int d : out.expected)
    out.expected_sum_squares += static_cast<long>(d) * d;
  out.ok = out.class_dims == out.expected &&
           out.sum_squares == out.expected_sum_squares;
  return out;
}

}  // namespace skl

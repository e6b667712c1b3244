#pragma once

#include <optional>
#include <vector>

#include "skl/errors.hpp"

namespace skl {

// Dense matrix over an exact field scalar S (CycNum or HbarScalar).
// Only the small exact solves the pipeline needs: RREF, kernel, linear
// systems, inverse, determinant.  Pivoting is deterministic (first nonzero
// entry in column order), so all outputs are canonical.
template <class S>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, S(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const S& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y);
    Matrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y);
    Matrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_)
      throw DomainError("matrix product shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& v = x.at(i, k);
        if (is_zero(v)) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) {
    return !(x == y);
  }

  Matrix scaled(const S& s) const {
    Matrix r = *this;
    for (auto& v : r.a_) v = v * s;
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto& v : a_)
      if (!is_zero(v)) return false;
    return true;
  }

  // Scalar multiple of the identity?  Returns the scalar if so.
  std::optional<S> as_scalar() const {
    if (rows_ != cols_ || rows_ == 0) return std::nullopt;
    S diag = at(0, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (i == j ? !(at(i, j) == diag) : !is_zero(at(i, j)))
          return std::nullopt;
      }
    return diag;
  }

  S trace() const {
    if (rows_ != cols_) throw DomainError("trace of non-square matrix");
    S t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // In-place reduced row echelon form; returns pivot columns in order.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int sel = -1;
      for (int i = row; i < rows_; ++i) {
        if (!is_zero(at(i, col))) {
          sel = i;
          break;
        }
      }
      if (sel < 0) continue;
      if (sel != row)
        for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
      S inv = S(1) / at(row, col);
      for (int j = col; j < cols_; ++j) at(row, j) = at(row, j) * inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == row || is_zero(at(i, col))) continue;
        S f = at(i, col);
        for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.rref().size());
  }

  // Basis of the right null space {v : A v = 0}, canonical (one vector per
  // free column, free coordinate set to 1).
  std::vector<std::vector<S>> kernel_basis() const {
    Matrix m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<S>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<S> v(cols_, S(0));
      v[free] = S(1);
      for (size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = -m.at(static_cast<int>(r), free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Solves A x = b.  Returns nullopt when inconsistent; throws
  // StructureError when the solution is not unique (the callers that allow
  // multiple solutions use kernel_basis on an augmented system instead).
  std::optional<std::vector<S>> solve_unique(const std::vector<S>& b) const {
    if (static_cast<int>(b.size()) != rows_)
      throw DomainError("solve_unique: rhs length mismatch");
    Matrix aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_)
      return std::nullopt;  // row (0 ... 0 | 1): inconsistent
    if (static_cast<int>(pivots.size()) < cols_)
      throw StructureError("solve_unique: underdetermined system");
    std::vector<S> x(cols_, S(0));
    for (size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = aug.at(static_cast<int>(r), cols_);
    return x;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw DomainError("inverse of non-square matrix");
    Matrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = S(1);
    }
    std::vector<int> pivots = aug.rref();
    if (static_cast<int>(pivots.size()) < cols_ || pivots[cols_ - 1] != cols_ - 1)
      return std::nullopt;
    Matrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  S det() const {
    if (rows_ != cols_) throw DomainError("det of non-square matrix");
    Matrix m = *this;
    S d(1);
    for (int col = 0; col < cols_; ++col) {
      int sel = -1;
      for (int i = col; i < rows_; ++i) {
        if (!is_zero(m.at(i, col))) {
          sel = i;
          break;
        }
      }
      if (sel < 0) return S(0);
      if (sel != col) {
        for (int j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
        d = -d;
      }
      d = d * m.at(col, col);
      S inv = S(1) / m.at(col, col);
      for (int i = col + 1; i < rows_; ++i) {
        if (is_zero(m.at(i, col))) continue;
        S f = m.at(i, col) * inv;
        for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
      }
    }
    return d;
  }

private:
  static void require_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw DomainError("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> a_;
};

}  // namespace skl

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "opdiag/errors.hpp"

namespace opdiag {

using Index = Eigen::Index;

/// Dense matrix over an exact field. Every algorithm in this library assumes
/// `Scalar` compares exactly; there are no tolerances anywhere.
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

template <class Scalar>
struct RrefResult {
  Mat<Scalar> reduced;
  std::vector<Index> pivots;  // strictly increasing column indices

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form by Gauss-Jordan elimination. The first nonzero
/// entry of a column is taken as pivot; the result is unique regardless.
template <class Scalar>
RrefResult<Scalar> rref(Mat<Scalar> m) {
  RrefResult<Scalar> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = row;
    while (pivot < rows && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));

    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < cols; ++j) m(row, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      const Scalar f = m(i, col);
      for (Index j = col; j < cols; ++j)
        if (m(row, j) != Scalar(0)) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const Mat<Scalar>& m) {
  return rref(m).rank();
}

/// A subspace of Scalar^n held as an independent set of basis columns.
/// The zero subspace is an n x 0 matrix.
template <class Scalar>
struct Subspace {
  Mat<Scalar> basis;

  Subspace() = default;
  explicit Subspace(Mat<Scalar> columns) : basis(std::move(columns)) {}

  static Subspace zero(Index ambient) { return Subspace(Mat<Scalar>(ambient, 0)); }
  static Subspace full(Index ambient) { return Subspace(Mat<Scalar>::Identity(ambient, ambient)); }

  Index ambient_dim() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }

  bool contains(const Vec<Scalar>& v) const {
    Mat<Scalar> aug(ambient_dim(), dim() + 1);
    aug << basis, v;
    return rank(aug) == dim();
  }

  bool contains(const Subspace& other) const {
    if (other.dim() == 0) return true;
    Mat<Scalar> aug(ambient_dim(), dim() + other.dim());
    aug << basis, other.basis;
    return rank(aug) == dim();
  }

  /// Set equality, independent of the chosen bases.
  bool same_as(const Subspace& other) const {
    return ambient_dim() == other.ambient_dim() && dim() == other.dim() && contains(other);
  }
};

/// Kernel of m. Free variables are parametrized in increasing column order:
/// the basis vector for free column f has a 1 in position f and zeros in the
/// other free positions.
template <class Scalar>
Subspace<Scalar> kernel_basis(const Mat<Scalar>& m) {
  const auto r = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  Mat<Scalar> basis = Mat<Scalar>::Zero(cols, cols - r.rank());
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (Index row = 0; row < r.rank(); ++row)
      basis(r.pivots[static_cast<std::size_t>(row)], k) = -r.reduced(row, f);
    ++k;
  }
  return Subspace<Scalar>(std::move(basis));
}

/// Column space of m, spanned by the columns of m at the rref pivot positions.
template <class Scalar>
Subspace<Scalar> column_basis(const Mat<Scalar>& m) {
  const auto r = rref(m);
  Mat<Scalar> basis(m.rows(), r.rank());
  for (Index k = 0; k < r.rank(); ++k) basis.col(k) = m.col(r.pivots[static_cast<std::size_t>(k)]);
  return Subspace<Scalar>(std::move(basis));
}

/// Side-by-side concatenation; all blocks must share the row count.
template <class Scalar>
Mat<Scalar> hstack(const std::vector<Mat<Scalar>>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) fail(ErrorKind::Input, "hstack: row count mismatch", {{}, "block", b.rows(), b.cols()});
    cols += b.cols();
  }
  Mat<Scalar> out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

/// Exact solution X of a*X = b when a has full column rank and the system is
/// consistent; nullopt otherwise.
template <class Scalar>
std::optional<Mat<Scalar>> solve_unique(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows()) fail(ErrorKind::Input, "solve: row count mismatch", {{}, "rhs", b.rows(), b.cols()});
  Mat<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto r = rref(std::move(aug));
  if (r.rank() != a.cols()) return std::nullopt;
  for (Index k = 0; k < r.rank(); ++k)
    if (r.pivots[static_cast<std::size_t>(k)] >= a.cols()) return std::nullopt;
  for (Index i = r.rank(); i < r.reduced.rows(); ++i)
    if (!is_zero(r.reduced.row(i).tail(b.cols()))) return std::nullopt;
  return Mat<Scalar>(r.reduced.topRightCorner(a.cols(), b.cols()));
}

template <class Scalar>
std::optional<Mat<Scalar>> try_inverse(const Mat<Scalar>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  return solve_unique<Scalar>(a, Mat<Scalar>::Identity(a.rows(), a.rows()));
}

template <class Scalar>
Mat<Scalar> inverse(const Mat<Scalar>& a) {
  auto inv = try_inverse(a);
  if (!inv) fail(ErrorKind::Input, "matrix is singular", {{}, "matrix", a.rows(), a.cols()});
  return *std::move(inv);
}

/// Determinant by fraction-producing elimination.
template <class Scalar>
Scalar determinant(Mat<Scalar> m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Input, "determinant of a non-square matrix", {{}, "matrix", m.rows(), m.cols()});
  const Index n = m.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col) == Scalar(0)) continue;
      const Scalar f = m(i, col) / m(col, col);
      for (Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace opdiag

#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "opdiag/matrix.hpp"

namespace opdiag {

/// Whether the coefficients past the truncation order are known to vanish.
enum class Tail {
  Truncated,  // unknown beyond trunc_order
  Exact,      // a polynomial: every coefficient beyond trunc_order is zero
};

namespace detail {

constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;

inline long effective_order(long order, Tail tail) { return tail == Tail::Exact ? kUnbounded : order; }

}  // namespace detail

/// Truncated power series sum_{i=0}^{T} eps^i C_i of rows x cols matrices.
template <class Scalar>
class MatSeries {
 public:
  using Matrix = Mat<Scalar>;

  MatSeries() = default;

  MatSeries(Index rows, Index cols, std::vector<Matrix> coeffs, Tail tail)
      : rows_(rows), cols_(cols), coeffs_(std::move(coeffs)), tail_(tail) {
    if (coeffs_.empty()) coeffs_.push_back(Matrix::Zero(rows_, cols_));
    for (const auto& c : coeffs_)
      if (c.rows() != rows_ || c.cols() != cols_)
        fail(ErrorKind::Input, "series coefficient shape mismatch", {{}, "coefficient", c.rows(), c.cols()});
  }

  static MatSeries polynomial(Index rows, Index cols, std::vector<Matrix> coeffs) {
    return MatSeries(rows, cols, std::move(coeffs), Tail::Exact);
  }
  static MatSeries truncated(Index rows, Index cols, std::vector<Matrix> coeffs) {
    return MatSeries(rows, cols, std::move(coeffs), Tail::Truncated);
  }
  static MatSeries constant(const Matrix& c) { return polynomial(c.rows(), c.cols(), {c}); }
  static MatSeries identity(Index n) { return constant(Matrix::Identity(n, n)); }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  long trunc_order() const { return static_cast<long>(coeffs_.size()) - 1; }
  Tail tail() const { return tail_; }
  bool is_polynomial() const { return tail_ == Tail::Exact; }
  /// Highest order through which coefficients are known (unbounded for polynomials).
  long known_through() const { return detail::effective_order(trunc_order(), tail_); }

  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  /// Coefficient of eps^i. Zero past the end of a polynomial; an error past
  /// the end of a truncated series.
  Matrix coefficient(long i) const {
    if (i < 0) return Matrix::Zero(rows_, cols_);
    if (i <= trunc_order()) return coeffs_[static_cast<std::size_t>(i)];
    if (tail_ == Tail::Exact) return Matrix::Zero(rows_, cols_);
    fail(ErrorKind::Truncation,
         "coefficient " + std::to_string(i) + " requested from a series truncated at order " +
             std::to_string(trunc_order()),
         {{}, "series", rows_, cols_});
  }

  /// The same series known through order t. Polynomials are zero-padded;
  /// a truncated series can only be shortened.
  MatSeries truncate(long t) const {
    if (t < 0) fail(ErrorKind::Input, "negative truncation order");
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(t + 1));
    for (long i = 0; i <= t; ++i) out.push_back(coefficient(i));
    return MatSeries(rows_, cols_, std::move(out), Tail::Truncated);
  }

  /// Exact equality of coefficient grids through order t (zero-padding polynomials).
  bool equal_through(const MatSeries& other, long t) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (long i = 0; i <= t; ++i)
      if (coefficient(i) != other.coefficient(i)) return false;
    return true;
  }

  /// First order <= t where the two series differ, or -1.
  long first_difference(const MatSeries& other, long t) const {
    for (long i = 0; i <= t; ++i)
      if (coefficient(i) != other.coefficient(i)) return i;
    return -1;
  }

  /// Value at a point; only meaningful for polynomials (truncated series are
  /// summed as the polynomial of their known coefficients).
  Matrix evaluate(const Scalar& eps) const {
    Matrix acc = Matrix::Zero(rows_, cols_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * eps + *it).eval();
    return acc;
  }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Matrix> coeffs_;
  Tail tail_ = Tail::Truncated;
};

template <class Scalar>
MatSeries<Scalar> operator+(const MatSeries<Scalar>& a, const MatSeries<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Input, "series_add: shape mismatch", {{}, "rhs", b.rows(), b.cols()});
  const bool exact = a.is_polynomial() && b.is_polynomial();
  const long t = exact ? std::max(a.trunc_order(), b.trunc_order()) : std::min(a.known_through(), b.known_through());
  std::vector<Mat<Scalar>> out;
  for (long i = 0; i <= t; ++i) out.push_back(a.coefficient(i) + b.coefficient(i));
  return MatSeries<Scalar>(a.rows(), a.cols(), std::move(out), exact ? Tail::Exact : Tail::Truncated);
}

template <class Scalar>
MatSeries<Scalar> operator-(const MatSeries<Scalar>& a) {
  std::vector<Mat<Scalar>> out;
  for (const auto& c : a.coeffs()) out.push_back(-c);
  return MatSeries<Scalar>(a.rows(), a.cols(), std::move(out), a.tail());
}

template <class Scalar>
MatSeries<Scalar> operator-(const MatSeries<Scalar>& a, const MatSeries<Scalar>& b) {
  return a + (-b);
}

/// Cauchy product. The result is known through the smaller of the two known
/// orders; the product of two polynomials is a polynomial.
template <class Scalar>
MatSeries<Scalar> series_mul(const MatSeries<Scalar>& a, const MatSeries<Scalar>& b) {
  if (a.cols() != b.rows())
    fail(ErrorKind::Input, "series_mul: inner dimensions differ", {{}, "rhs", b.rows(), b.cols()});
  const bool exact = a.is_polynomial() && b.is_polynomial();
  const long t = exact ? a.trunc_order() + b.trunc_order() : std::min(a.known_through(), b.known_through());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  const long ta = a.trunc_order();
  const long tb = b.trunc_order();
  std::vector<Mat<Scalar>> out;
  out.reserve(static_cast<std::size_t>(t + 1));
  for (long l = 0; l <= t; ++l) {
    Mat<Scalar> acc = Mat<Scalar>::Zero(a.rows(), b.cols());
    for (long i = std::max(0L, l - tb); i <= std::min(l, ta); ++i) {
      const auto& x = ac[static_cast<std::size_t>(i)];
      const auto& y = bc[static_cast<std::size_t>(l - i)];
      if (is_zero(x) || is_zero(y)) continue;
      acc += x * y;
    }
    out.push_back(std::move(acc));
  }
  return MatSeries<Scalar>(a.rows(), b.cols(), std::move(out), exact ? Tail::Exact : Tail::Truncated);
}

template <class Scalar>
MatSeries<Scalar> operator*(const MatSeries<Scalar>& a, const MatSeries<Scalar>& b) {
  return series_mul(a, b);
}

template <class Scalar>
MatSeries<Scalar> operator*(const Mat<Scalar>& a, const MatSeries<Scalar>& b) {
  return series_mul(MatSeries<Scalar>::constant(a), b);
}

template <class Scalar>
MatSeries<Scalar> operator*(const MatSeries<Scalar>& a, const Mat<Scalar>& b) {
  return series_mul(a, MatSeries<Scalar>::constant(b));
}

/// Inverse of a square series through order t: X_0 = A_0^{-1},
/// X_l = -A_0^{-1} sum_{j<l} A_{l-j} X_j.
template <class Scalar>
MatSeries<Scalar> series_inverse(const MatSeries<Scalar>& a, long t) {
  if (a.rows() != a.cols()) fail(ErrorKind::Input, "series_inverse: series is not square", {{}, "series", a.rows(), a.cols()});
  if (t < 0) fail(ErrorKind::Input, "series_inverse: negative order");
  const auto a0_inv = try_inverse<Scalar>(a.coefficient(0));
  if (!a0_inv) fail(ErrorKind::Input, "series_inverse: singular leading coefficient", {{}, "A_0", a.rows(), a.cols()});

  std::vector<Mat<Scalar>> coeff;
  coeff.reserve(static_cast<std::size_t>(t + 1));
  for (long i = 0; i <= t; ++i) coeff.push_back(a.coefficient(i));

  std::vector<Mat<Scalar>> x;
  x.reserve(static_cast<std::size_t>(t + 1));
  x.push_back(*a0_inv);
  for (long l = 1; l <= t; ++l) {
    Mat<Scalar> acc = Mat<Scalar>::Zero(a.rows(), a.cols());
    for (long j = 0; j < l; ++j) {
      const auto& c = coeff[static_cast<std::size_t>(l - j)];
      if (!is_zero(c)) acc += c * x[static_cast<std::size_t>(j)];
    }
    x.push_back(-(*a0_inv * acc));
  }
  return MatSeries<Scalar>::truncated(a.rows(), a.cols(), std::move(x));
}

/// Truncated Laurent series sum_{l=-p}^{T} eps^l C_l with minimal pole:
/// if p > 0 then C_{-p} is nonzero.
template <class Scalar>
class MatLaurent {
 public:
  using Matrix = Mat<Scalar>;

  MatLaurent() = default;

  /// `coeffs` holds C_{-pole} .. C_T. Leading zero blocks are trimmed.
  MatLaurent(Index rows, Index cols, long pole, std::vector<Matrix> coeffs, Tail tail)
      : rows_(rows), cols_(cols), pole_(pole), coeffs_(std::move(coeffs)), tail_(tail) {
    if (pole_ < 0) fail(ErrorKind::Input, "negative pole order");
    if (coeffs_.empty()) fail(ErrorKind::Input, "Laurent series without coefficients");
    for (const auto& c : coeffs_)
      if (c.rows() != rows_ || c.cols() != cols_)
        fail(ErrorKind::Input, "Laurent coefficient shape mismatch", {{}, "coefficient", c.rows(), c.cols()});
    std::size_t drop = 0;
    while (pole_ > 0 && coeffs_.size() - drop > 1 && is_zero(coeffs_[drop])) {
      ++drop;
      --pole_;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(drop));
  }

  static MatLaurent from_series(const MatSeries<Scalar>& s) {
    return MatLaurent(s.rows(), s.cols(), 0, s.coeffs(), s.tail());
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  long pole_order() const { return pole_; }
  long trunc_order() const { return static_cast<long>(coeffs_.size()) - 1 - pole_; }
  Tail tail() const { return tail_; }
  long known_through() const { return detail::effective_order(trunc_order(), tail_); }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  /// Coefficient of eps^l; zero below the pole and past the end of an exact series.
  Matrix coefficient(long l) const {
    if (l < -pole_) return Matrix::Zero(rows_, cols_);
    if (l <= trunc_order()) return coeffs_[static_cast<std::size_t>(l + pole_)];
    if (tail_ == Tail::Exact) return Matrix::Zero(rows_, cols_);
    fail(ErrorKind::Truncation,
         "coefficient " + std::to_string(l) + " requested from a Laurent series truncated at order " +
             std::to_string(trunc_order()),
         {{}, "laurent", rows_, cols_});
  }

  MatLaurent truncate(long t) const {
    if (t < -pole_) fail(ErrorKind::Input, "truncation below the pole");
    std::vector<Matrix> out;
    for (long l = -pole_; l <= t; ++l) out.push_back(coefficient(l));
    return MatLaurent(rows_, cols_, pole_, std::move(out), Tail::Truncated);
  }

  /// Exact equality of coefficients from min pole through order t.
  bool equal_through(const MatLaurent& other, long t) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (long l = -std::max(pole_, other.pole_); l <= t; ++l)
      if (coefficient(l) != other.coefficient(l)) return false;
    return true;
  }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  long pole_ = 0;
  std::vector<Matrix> coeffs_;
  Tail tail_ = Tail::Truncated;
};

/// Laurent product: poles add, then the result is renormalized to its minimal
/// pole. Coefficient l needs A_i for i <= l + pole(B) and B_j for j <= l + pole(A),
/// which bounds the known order of a truncated operand.
template <class Scalar>
MatLaurent<Scalar> laurent_mul(const MatLaurent<Scalar>& a, const MatLaurent<Scalar>& b) {
  if (a.cols() != b.rows())
    fail(ErrorKind::Input, "laurent_mul: inner dimensions differ", {{}, "rhs", b.rows(), b.cols()});
  const long pa = a.pole_order();
  const long pb = b.pole_order();
  const bool exact = a.tail() == Tail::Exact && b.tail() == Tail::Exact;
  long t;
  if (exact) {
    t = a.trunc_order() + b.trunc_order();
  } else {
    const long from_a = a.tail() == Tail::Exact ? detail::kUnbounded : a.trunc_order() - pb;
    const long from_b = b.tail() == Tail::Exact ? detail::kUnbounded : b.trunc_order() - pa;
    t = std::min(from_a, from_b);
  }
  const long p = pa + pb;
  if (t < -p) fail(ErrorKind::Truncation, "laurent_mul: operands too short for any product coefficient");

  std::vector<Mat<Scalar>> out;
  out.reserve(static_cast<std::size_t>(t + p + 1));
  for (long l = -p; l <= t; ++l) {
    Mat<Scalar> acc = Mat<Scalar>::Zero(a.rows(), b.cols());
    const long lo = std::max(-pa, l - b.trunc_order());
    const long hi = std::min(a.trunc_order(), l + pb);
    for (long i = lo; i <= hi; ++i) {
      const auto& x = a.coeffs()[static_cast<std::size_t>(i + pa)];
      const auto& y = b.coeffs()[static_cast<std::size_t>(l - i + pb)];
      if (is_zero(x) || is_zero(y)) continue;
      acc += x * y;
    }
    out.push_back(std::move(acc));
  }
  return MatLaurent<Scalar>(a.rows(), b.cols(), p, std::move(out), exact ? Tail::Exact : Tail::Truncated);
}

template <class Scalar>
MatLaurent<Scalar> operator*(const MatLaurent<Scalar>& a, const MatLaurent<Scalar>& b) {
  return laurent_mul(a, b);
}

template <class Scalar>
MatLaurent<Scalar> operator-(const MatLaurent<Scalar>& a, const MatLaurent<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Input, "laurent_sub: shape mismatch", {{}, "rhs", b.rows(), b.cols()});
  const bool exact = a.tail() == Tail::Exact && b.tail() == Tail::Exact;
  const long p = std::max(a.pole_order(), b.pole_order());
  const long t = exact ? std::max(a.trunc_order(), b.trunc_order()) : std::min(a.known_through(), b.known_through());
  std::vector<Mat<Scalar>> out;
  for (long l = -p; l <= t; ++l) out.push_back(a.coefficient(l) - b.coefficient(l));
  return MatLaurent<Scalar>(a.rows(), a.cols(), p, std::move(out), exact ? Tail::Exact : Tail::Truncated);
}

}  // namespace opdiag

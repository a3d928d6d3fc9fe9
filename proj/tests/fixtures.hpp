#pragma once

#include <initializer_list>
#include <map>
#include <vector>

#include "opdiag/recursion.hpp"

namespace fixtures {

using opdiag::Matrix;
using opdiag::Rat;
using opdiag::Series;

inline Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  const auto m = static_cast<opdiag::Index>(rows.size());
  const auto n = static_cast<opdiag::Index>(rows.begin()->size());
  Matrix out(m, n);
  opdiag::Index i = 0;
  for (const auto& r : rows) {
    opdiag::Index j = 0;
    for (int v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

/// Matrix given by its columns.
inline Matrix by_cols(std::initializer_list<std::initializer_list<int>> cols) {
  Matrix t = mat(cols);
  return t.transpose();
}

inline Matrix e(int i, int n = 3) {
  Matrix v = Matrix::Zero(n, 1);
  v(i - 1, 0) = 1;
  return v;
}

inline Matrix zeros(int m, int n) { return Matrix::Zero(m, n); }
inline Matrix eye(int n) { return Matrix::Identity(n, n); }

/// L(eps) = [[1, 0, eps^3], [0, eps^2, eps + eps^3], [eps^3, 0, eps^2]].
inline Series example1() {
  return Series::polynomial(3, 3,
                            {mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}), mat({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}),
                             mat({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}), mat({{0, 0, 1}, {0, 0, 1}, {1, 0, 0}})});
}

/// Scalar power/Laurent series c * eps^shift / (1 - eps^period), coefficients
/// from power `from` through `to`.
inline std::map<long, Rat> geometric(Rat c, long shift, long period, long from, long to) {
  std::map<long, Rat> out;
  for (long p = from; p <= to; ++p) out[p] = 0;
  for (long p = shift; p <= to; p += period)
    if (p >= from) out[p] = c;
  return out;
}

/// Assembles a matrix of scalar expansions into per-power coefficient matrices.
inline std::map<long, Matrix> assemble(const std::vector<std::vector<std::map<long, Rat>>>& entries, long from,
                                       long to) {
  std::map<long, Matrix> out;
  const auto m = static_cast<opdiag::Index>(entries.size());
  const auto n = static_cast<opdiag::Index>(entries.front().size());
  for (long p = from; p <= to; ++p) {
    Matrix c = Matrix::Zero(m, n);
    for (opdiag::Index i = 0; i < m; ++i)
      for (opdiag::Index j = 0; j < n; ++j) {
        const auto& entry = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (auto it = entry.find(p); it != entry.end()) c(i, j) = it->second;
      }
    out[p] = c;
  }
  return out;
}

/// phi(eps) for Example 1, expanded from its closed form.
inline std::map<long, Matrix> example1_phi(long to) {
  const std::map<long, Rat> zero = geometric(0, 0, 1, 0, to);
  return assemble({{geometric(1, 0, to + 1, 0, to), geometric(1, 4, 4, 0, to), geometric(-1, 3, 4, 0, to)},
                   {zero, geometric(1, 0, 2, 0, to), geometric(-1, 1, 2, 0, to)},
                   {zero, geometric(-1, 1, 4, 0, to), geometric(1, 0, 4, 0, to)}},
                  0, to);
}

/// L^{-1}(eps) for Example 1, expanded from its closed form, powers -3 .. to.
inline std::map<long, Matrix> example1_inverse(long to) {
  const long from = -3;
  const std::map<long, Rat> zero = geometric(0, 0, 1, from, to);
  return assemble({{geometric(1, 0, 4, from, to), zero, geometric(-1, 1, 4, from, to)},
                   {geometric(1, 0, 2, from, to), geometric(1, -2, to + 3, from, to), geometric(-1, -3, 2, from, to)},
                   {geometric(-1, 1, 4, from, to), zero, geometric(1, -2, 4, from, to)}},
                  from, to);
}

}  // namespace fixtures

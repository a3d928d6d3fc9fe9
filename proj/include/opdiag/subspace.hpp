#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opdiag/matrix.hpp"

namespace opdiag {

template <class Scalar>
struct Split {
  Subspace<Scalar> kernel;  // {x in domain : S x = 0}
  Subspace<Scalar> image;   // S(domain)
};

/// Kernel and image of S restricted to `domain`, both in ambient coordinates.
/// The kernel basis is domain.basis times the rref kernel basis of S*domain.basis;
/// the image basis is the pivot columns of S*domain.basis.
template <class Scalar>
Split<Scalar> restrict_and_split(const Mat<Scalar>& s, const Subspace<Scalar>& domain) {
  if (s.cols() != domain.ambient_dim())
    fail(ErrorKind::Input, "restrict_and_split: operator does not act on the domain's ambient space",
         {{}, "S", s.rows(), s.cols()});
  const Mat<Scalar> restricted = s * domain.basis;
  const auto coords = kernel_basis<Scalar>(restricted);
  return {Subspace<Scalar>(domain.basis * coords.basis), column_basis<Scalar>(restricted)};
}

/// Greedy complement of `sub` inside `ambient`: walk the ambient basis columns
/// in order and keep each one that raises the rank of sub + kept columns.
template <class Scalar>
Subspace<Scalar> pivot_complement(const Subspace<Scalar>& ambient, const Subspace<Scalar>& sub) {
  if (ambient.ambient_dim() != sub.ambient_dim())
    fail(ErrorKind::Input, "complement: ambient dimensions differ", {{}, "sub", sub.ambient_dim(), sub.dim()});
  if (!ambient.contains(sub))
    fail(ErrorKind::Input, "complement: sub is not contained in ambient", {{}, "sub", sub.ambient_dim(), sub.dim()});
  const Index n = ambient.ambient_dim();
  const Index want = ambient.dim() - sub.dim();
  Mat<Scalar> acc = sub.basis;
  std::vector<Index> kept;
  for (Index j = 0; j < ambient.dim() && static_cast<Index>(kept.size()) < want; ++j) {
    Mat<Scalar> trial(n, acc.cols() + 1);
    trial << acc, ambient.basis.col(j);
    if (rank<Scalar>(trial) == trial.cols()) {
      acc = std::move(trial);
      kept.push_back(j);
    }
  }
  if (static_cast<Index>(kept.size()) != want)
    fail(ErrorKind::Input, "complement: sub is not contained in ambient", {{}, "sub", sub.ambient_dim(), sub.dim()});
  Mat<Scalar> basis(n, want);
  for (Index k = 0; k < want; ++k) basis.col(k) = ambient.basis.col(kept[static_cast<std::size_t>(k)]);
  return Subspace<Scalar>(std::move(basis));
}

/// Validates a caller-supplied complement: it must lie in `ambient` and
/// together with `sub` span `ambient` with no overlap.
template <class Scalar>
Subspace<Scalar> given_complement(const Subspace<Scalar>& ambient, const Subspace<Scalar>& sub, Mat<Scalar> basis) {
  Subspace<Scalar> comp(std::move(basis));
  const auto bad = [&](const char* why) {
    fail(ErrorKind::Input, std::string("given basis is not a valid complement: ") + why,
         {{}, "given", comp.basis.rows(), comp.basis.cols()});
  };
  if (comp.ambient_dim() != ambient.ambient_dim()) bad("ambient dimension differs");
  if (rank<Scalar>(comp.basis) != comp.dim()) bad("columns are dependent");
  if (comp.dim() + sub.dim() != ambient.dim()) bad("dimensions do not add up");
  if (!ambient.contains(comp)) bad("not contained in the ambient subspace");
  Mat<Scalar> both(ambient.ambient_dim(), comp.dim() + sub.dim());
  both << sub.basis, comp.basis;
  if (rank<Scalar>(both) != ambient.dim()) bad("intersects the subspace being complemented");
  return comp;
}

/// Pivot strategy when `given` is empty, otherwise the validated given basis.
template <class Scalar>
Subspace<Scalar> choose_complement(const Subspace<Scalar>& ambient, const Subspace<Scalar>& sub,
                                   const std::optional<Mat<Scalar>>& given = std::nullopt) {
  if (given) return given_complement(ambient, sub, *given);
  return pivot_complement(ambient, sub);
}

namespace detail {

template <class Scalar>
Mat<Scalar> concatenated_basis(const std::vector<Subspace<Scalar>>& parts) {
  if (parts.empty()) fail(ErrorKind::Input, "decomposition has no parts");
  const Index n = parts.front().ambient_dim();
  std::vector<Mat<Scalar>> blocks;
  for (const auto& p : parts) {
    if (p.ambient_dim() != n) fail(ErrorKind::Input, "decomposition parts live in different spaces");
    blocks.push_back(p.basis);
  }
  Mat<Scalar> full = hstack<Scalar>(blocks, n);
  if (full.cols() != n) fail(ErrorKind::Input, "parts do not decompose the ambient space", {{}, "parts", full.rows(), full.cols()});
  return full;
}

/// Rows of B_full^{-1} giving the coordinates of a vector in parts[target].
template <class Scalar>
Mat<Scalar> part_coordinates(const std::vector<Subspace<Scalar>>& parts, std::size_t target) {
  if (target >= parts.size()) fail(ErrorKind::Input, "projection target out of range");
  const Mat<Scalar> full = concatenated_basis(parts);
  const auto inv = try_inverse<Scalar>(full);
  if (!inv) fail(ErrorKind::Input, "parts do not decompose the ambient space", {{}, "parts", full.rows(), full.cols()});
  Index offset = 0;
  for (std::size_t i = 0; i < target; ++i) offset += parts[i].dim();
  return inv->middleRows(offset, parts[target].dim());
}

}  // namespace detail

/// Projection onto parts[target] along all other parts: B_t * (rows of B_full^{-1}).
template <class Scalar>
Mat<Scalar> projection_matrix(const std::vector<Subspace<Scalar>>& parts, std::size_t target) {
  const auto coords = detail::part_coordinates(parts, target);
  return parts[target].basis * coords;
}

/// Full-space matrix of (S restricted to Nc)^{-1} composed with the projection
/// onto R along the rest of `r_decomposition`. `r` must be one of the parts.
template <class Scalar>
Mat<Scalar> restricted_inverse(const Mat<Scalar>& s, const Subspace<Scalar>& nc, const Subspace<Scalar>& r,
                               const std::vector<Subspace<Scalar>>& r_decomposition) {
  if (s.cols() != nc.ambient_dim() || s.rows() != r.ambient_dim())
    fail(ErrorKind::Input, "restricted_inverse: shape mismatch", {{}, "S", s.rows(), s.cols()});
  std::optional<std::size_t> where;
  for (std::size_t i = 0; i < r_decomposition.size() && !where; ++i)
    if (r_decomposition[i].same_as(r)) where = i;
  if (!where) fail(ErrorKind::Input, "restricted_inverse: R is not a part of the decomposition");

  const Mat<Scalar> image = s * nc.basis;
  if (rank<Scalar>(image) != nc.dim())
    fail(ErrorKind::Input, "restricted_inverse: S is not injective on Nc", {{}, "Nc", nc.ambient_dim(), nc.dim()});
  if (!Subspace<Scalar>(image).same_as(r))
    fail(ErrorKind::Input, "restricted_inverse: S(Nc) differs from R", {{}, "R", r.ambient_dim(), r.dim()});

  // image * change = r.basis, so r.basis * a is hit by nc.basis * change * a.
  const auto change = solve_unique<Scalar>(image, r.basis);
  if (!change) fail(ErrorKind::Internal, "restricted_inverse: change of basis failed");
  const auto coords = detail::part_coordinates(r_decomposition, *where);
  return nc.basis * (*change) * coords;
}

}  // namespace opdiag

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opdiag/rational.hpp"
#include "opdiag/series.hpp"

// Brute-force checks that share nothing with the recursion beyond the
// matrix and series primitives.

namespace opdiag::oracle {

using Matrix = Mat<Rat>;
using Space = Subspace<Rat>;
using Series = MatSeries<Rat>;
using Laurent = MatLaurent<Rat>;

/// (m*l) x (n*l) block upper-triangular Toeplitz matrix with block (i, j) = L_{j-i}.
/// A Jordan chain (b_{l-1}, ..., b_0) stacked top to bottom lies in its kernel.
struct ToeplitzBlock {
  std::size_t length = 0;
  Matrix matrix;
};

ToeplitzBlock toeplitz_block(const Series& family, std::size_t length);
Space toeplitz_nullspace(const Series& family, std::size_t length);

/// Coefficients of det L(eps), low order first, found by exact interpolation.
/// For a truncated series this is the determinant of the known polynomial part.
std::vector<Rat> determinant_polynomial(const Series& family);

/// Laurent expansion of L(eps)^{-1} through eps^order, computed as
/// eps^{-v} adj L(eps) / (det L(eps) / eps^v) with adj and det interpolated
/// from point evaluations. Fails when det L vanishes identically or when the
/// pole exceeds p_max.
Laurent direct_laurent_inverse(const Series& family, long p_max, long order);

/// The augmented pencil Lbar_0 + eps Lbar_1 of a degree-n polynomial:
/// Lbar_0 block (i, j) = L_{i-j} for i >= j, Lbar_1 block (i, j) = L_{n-(j-i)} for j >= i.
struct AugmentedPencil {
  std::size_t degree = 0;
  Matrix lbar0;
  Matrix lbar1;

  Series pencil() const { return Series::polynomial(lbar0.rows(), lbar0.cols(), {lbar0, lbar1}); }
};

AugmentedPencil linearize_polynomial(const Series& family);

/// True when (kbar - 1) n < k <= kbar n.
bool linearization_bound_holds(std::size_t k, std::size_t kbar, std::size_t degree);

struct ResolventCheck {
  bool passed = false;
  std::optional<long> first_violation;  // -j for R_{-j}, +j for R_j
  long checked_through = 0;
};

/// Checks R_{-j} = (-1)^{j-1} (R_{-1} L0)^{j-1} R_{-1} and R_j = (-1)^j (R_0 L1)^j R_0
/// for 1 <= j <= order. Resolvents with a pole of order > 1 are rejected.
ResolventCheck resolvent_recurrence_check(const Matrix& l0, const Matrix& l1, const Laurent& resolvent, long order);

}  // namespace opdiag::oracle

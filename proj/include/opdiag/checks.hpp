#pragma once

#include <string>
#include <vector>

#include "opdiag/diagonalization.hpp"

// Exact identity checks over a recursion state or a diagonalization result.
// Every check reports what it executed; nothing here throws on a failed
// identity, only on malformed arguments.

namespace opdiag {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;

  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

/// (L_0 ... L_{j-1}) M_j = S_j at every completed stage j.
Check check_lemma2(const RecursionState& state);

/// The upper-triangular system with unit diagonal and blocks S_i^+ Sbar_v
/// maps each E column to (0, ..., 0, I).
Check check_triangular_system(const RecursionState& state);

/// After stabilization at k: E_{i,j} = 0 for k+2 <= i < j.
Check check_e_zero_pattern(const RecursionState& state);

/// After stabilization at k: M_{k+1+r, k+1+l} = M_{k+r, k+l} for 1 <= r <= l.
Check check_m_toeplitz_shift(const RecursionState& state);

/// dim Nc_{k+1} > 0, and Nc_{k+l} = R_{k+l} = {0} for every computed l >= 2.
Check check_stabilization_conditions(const RecursionState& state);

/// S_i N_i = 0 and S_i Nc_i = R_i for i <= k+1.
Check check_stage_properties(const RecursionState& state);

/// L phi = S_1 + eps S_2 + ... through the result order, with the tail
/// coefficients S_{k+l} (l >= 2) mapping into Rc_{k+1} and vanishing on N_{k+1}.
Check check_triangularization(const DiagonalizationResult& result);

/// psi^{-1} L phi = Delta through the result order, recomputed from scratch.
Check check_residual(const DiagonalizationResult& result);

/// L L^+ L = L and L^+ L L^+ = L^+ through `order`.
Check check_generalized_inverse(const DiagonalizationResult& result, long order);

/// Both projector families are idempotent through `order` and start at the
/// constant projections.
Check check_projectors(const DiagonalizationResult& result, long order);

/// S_P P = Delta, L phi = psi S_P P, psi^{-1} L phi P^{-1} = S_P, and the
/// exponent count equals the generic rank.
Check check_smith(const DiagonalizationResult& result);

/// L * kernel family = 0 through `order`.
Check check_kernel_family(const DiagonalizationResult& result, long order);

/// For l = 1 .. k+1: the Toeplitz nullity equals dim N_1 + ... + dim N_l and
/// the chain generators lie in the Toeplitz kernel.
Check check_jordan_chains(const DiagonalizationResult& result, std::vector<long>* nullities = nullptr);

/// L^+ against the direct Laurent inverse, from eps^{-k} through eps^order.
/// Skipped (passed, with a note) when L is not square or det L vanishes identically.
Check check_oracle_inverse(const DiagonalizationResult& result, long order);

/// Every check above on one result.
CheckReport verify_all(const DiagonalizationResult& result);

}  // namespace opdiag

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "opdiag/rational.hpp"
#include "opdiag/series.hpp"
#include "opdiag/subspace.hpp"

namespace opdiag {

using Matrix = Mat<Rat>;
using Vector = Vec<Rat>;
using Space = Subspace<Rat>;
using Series = MatSeries<Rat>;
using Laurent = MatLaurent<Rat>;

/// One stage i of the splitting
///   N_{i-1} = Nc_i (+) N_i,   Rc_{i-1} = R_i (+) Rc_i,
/// with S_i mapping Nc_i bijectively onto R_i.
struct Stage {
  Space kernel_complement;  // Nc_i
  Space kernel;             // N_i
  Space range;              // R_i
  Space range_complement;   // Rc_i
  Matrix s_bar;             // sum_{v<i} L_v M_{v,i-1}  (L_0 for i = 1)
  Matrix s;                 // (I - sum_{j<i} calP_j) s_bar
  Matrix s_plus;            // (S_i on Nc_i)^{-1} calP_i as a full-space matrix
  Matrix p;                 // projection onto Nc_i along the rest of the domain split
  Matrix cal_p;             // projection onto R_i along the rest of the codomain split
};

/// The per-stage ledger, stage i stored at index i-1.
struct Decomposition {
  std::vector<Stage> stages;

  std::size_t size() const { return stages.size(); }
  const Stage& operator[](std::size_t i) const { return stages.at(i - 1); }  // 1-based

  /// N_i for i >= 0 (N_0 is the whole domain).
  Space kernel(std::size_t i, Index domain_dim) const;
  /// Rc_i for i >= 0 (Rc_0 is the whole codomain).
  Space range_complement(std::size_t i, Index codomain_dim) const;
  std::size_t total_range_dim(std::size_t through) const;
};

/// Complements injected per stage (1-based); stages without an entry use the
/// pivot strategy.
struct ComplementPlan {
  std::map<std::size_t, Matrix> kernel_complements;
  std::map<std::size_t, Matrix> range_complements;
};

struct RecursionOptions {
  std::size_t max_stages = 0;  // 0: dim(domain) + dim(codomain) + 2
  ComplementPlan complements;
};

/// Growing state of the recursion: stages 1..s, the E and M block columns, and
/// the stabilization bookkeeping. e_cols[j-1][i-1] holds E_{i,j}; same for M.
struct RecursionState {
  Series family;
  Decomposition ledger;
  std::vector<std::vector<Matrix>> e_cols;
  std::vector<std::vector<Matrix>> m_cols;
  std::size_t generic_rank = 0;
  std::optional<std::size_t> stabilization_k;
  ComplementPlan complements;

  std::size_t stage() const { return ledger.size(); }
  Index domain_dim() const { return family.cols(); }
  Index codomain_dim() const { return family.rows(); }
  const Matrix& E(std::size_t i, std::size_t j) const { return e_cols.at(j - 1).at(i - 1); }
  const Matrix& M(std::size_t i, std::size_t j) const { return m_cols.at(j - 1).at(i - 1); }
};

/// Rank of L(eps) over the rational functions in eps: the largest rank among
/// degree * min(rows, cols) + 1 sample points eps = 1, 2, 3, ...
std::size_t generic_rank(const Series& family, long degree_hint);

/// Stage 0: trivial splits, generic rank computed, nothing else.
RecursionState start_recursion(Series family, ComplementPlan complements = {});

/// Appends stage s+1: S_bar, S, the splits, P, calP, S^+, then the E and M columns.
RecursionState run_stage(RecursionState state);

/// E_{j,j} = I; E_{i,j} = -S_i^+ sum_{v=i+1}^{j} S_bar_v E_{v,j}, bottom to top.
std::vector<Matrix> build_E_column(const RecursionState& state, std::size_t j);

/// (M_{1,j} .. M_{j,j}) = diag(I, M^{(j-1)}) (E_{1,j} .. E_{j,j}).
std::vector<Matrix> build_M_column(const RecursionState& state, std::size_t j);

/// k once the ranges found so far account for the whole generic rank:
/// k = (last stage with R_i != {0}) - 1.
std::optional<std::size_t> detect_stabilization(const RecursionState& state);

/// Runs stages until stabilization is certified. Throws NoStabilization when
/// the stage budget or the truncation of a non-polynomial family runs out.
RecursionState run_until_stable(RecursionState state, std::size_t max_stages = 0);

/// Runs further stages until at least `stages` are complete.
RecursionState extend_to(RecursionState state, std::size_t stages);

struct JordanChain {
  std::vector<Vector> vectors;  // b_{l-1}, ..., b_0
  const Vector& root() const { return vectors.back(); }
  std::size_t length() const { return vectors.size(); }
};

/// Generators of N[Delta^l]: the columns of M^{(l)} * diag(basis N_1, ..., basis N_l),
/// stacked as (b_{l-1}; ...; b_0). `chains` are the columns that come from N_l,
/// i.e. those with a nonzero root.
struct JordanChainBasis {
  std::size_t length = 0;
  Matrix generator;
  std::vector<JordanChain> chains;
};

JordanChainBasis jordan_chain_basis(const RecursionState& state, std::size_t length);

/// Rank of a root candidate: the largest i with b0 in N_i, or nullopt for an
/// infinite rank (b0 in N_{k+1}). Requires a stabilized state.
std::optional<std::size_t> rank_of_root(const RecursionState& state, const Vector& b0);

struct PartialTriangularization {
  Series transform;   // p_k(eps) = I + eps M_{k,k+1} + ... + eps^k M_{1,k+1}
  Series product;     // L(eps) p_k(eps): S_1, ..., S_{k+1}, then the remainders Q_{i+1}
};

PartialTriangularization partial_triangularize(const RecursionState& state, std::size_t k);

}  // namespace opdiag

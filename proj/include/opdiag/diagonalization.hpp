#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opdiag/recursion.hpp"

namespace opdiag {

/// eps^power * coefficient; Delta(eps) is a list of these with coefficient S_i P_i.
struct DeltaTerm {
  std::size_t power = 0;
  Matrix coefficient;
};

struct DiagonalizeOptions {
  std::optional<long> order;   // default: max(2k + 4, 12), capped by a truncated input
  std::size_t max_stages = 0;  // 0: dim(domain) + dim(codomain) + 2
  ComplementPlan complements;
};

struct ResidualCheck {
  bool ok = false;
  long checked_through = -1;
  std::optional<long> first_failing_order;
};

/// psi^{-1}(eps) L(eps) phi(eps) = Delta(eps), verified exactly through `order`.
struct DiagonalizationResult {
  std::size_t k = 0;
  long order = 0;
  bool truncated_input = false;
  RecursionState state;  // stages 1 .. k + 1 + order
  Decomposition decomposition;  // stages 1 .. k + 1
  Space tail_kernel;            // N_{k+1}
  Space tail_range_complement;  // Rc_{k+1}
  std::vector<DeltaTerm> delta_terms;
  Series phi;
  Series psi;
  Series phi_inv;
  Series psi_inv;
  ResidualCheck residual;
};

long default_order(std::size_t k);

/// phi(eps) = I + sum_{i=1}^{T} eps^i M_{k+1,k+1+i}. Needs stages through k+1+T.
Series phi_series(const RecursionState& state, long order);

/// psi(eps) = I + sum_i eps^i (S_{i+1} S_1^+ + ... + S_{k+i+1} S_{k+1}^+).
Series psi_series(const RecursionState& state, long order);

/// Delta(eps) = S_1 P_1 + eps S_2 P_2 + ... + eps^k S_{k+1} P_{k+1}.
std::vector<DeltaTerm> delta(const RecursionState& state);

Series delta_series(const std::vector<DeltaTerm>& terms, Index rows, Index cols);

DiagonalizationResult diagonalize(const Series& family, const DiagonalizeOptions& options = {});

/// phi, psi and their inverses through `order`, running further stages when
/// the result holds fewer.
struct Transforms {
  Series phi;
  Series psi;
  Series phi_inv;
  Series psi_inv;
};

Transforms transforms_to(const DiagonalizationResult& result, long order);

/// L^+(eps) = phi(eps) Delta^+(eps) psi^{-1}(eps) with
/// Delta^+(eps) = sum_i eps^{-(i-1)} S_i^+, known through eps^order.
Laurent generalized_inverse(const DiagonalizationResult& result, long order);

/// Delta^+ as an exact Laurent polynomial.
Laurent delta_inverse(const DiagonalizationResult& result);

struct SubspaceFamilies {
  Series kernel;  // phi(eps) * basis(N_{k+1})
  Series range;   // psi(eps) * basis(R_1 + ... + R_{k+1})
};

SubspaceFamilies kernel_range_families(const DiagonalizationResult& result, long order);

struct ProjectorFamilies {
  Series left;   // phi (P_1 + ... + P_{k+1}) phi^{-1}, acting on the domain
  Series right;  // psi (calP_1 + ... + calP_{k+1}) psi^{-1}, acting on the codomain
};

ProjectorFamilies projector_families(const DiagonalizationResult& result, long order);

struct SmithFactorization {
  Matrix s_p;                      // S_1 P_1 + ... + S_{k+1} P_{k+1}
  std::vector<DeltaTerm> p_terms;  // (i-1, P_i)
  Series a_series;                 // psi(eps) S_P
  std::vector<std::size_t> exponents;  // i-1 repeated dim Nc_i times, ascending

  Series p_series() const;     // P(eps) = P_1 + eps P_2 + ... + eps^k P_{k+1}
  Laurent p_inverse() const;   // eps^{-k} P_{k+1} + ... + P_1
};

SmithFactorization smith_factorize(const DiagonalizationResult& result);

}  // namespace opdiag

#include "opdiag/checks.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "opdiag/oracles.hpp"

namespace opdiag {

namespace {

std::string str(long v) { return std::to_string(v); }

Check pass(std::string name, std::string detail) { return {std::move(name), true, std::move(detail)}; }
Check failed(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

/// Highest order the identity can be checked at when L is truncated: `cost`
/// further orders of L are consumed beyond the checked one.
long capped(const Series& family, long order, long cost) {
  if (family.is_polynomial()) return order;
  return std::min(order, family.trunc_order() - cost);
}

template <class F>
Check guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return failed(name, std::string("error: ") + e.what());
  }
}

}  // namespace

bool CheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Check check_lemma2(const RecursionState& state) {
  const std::string name = "lemma2";
  const Index m = state.codomain_dim();
  const Index n = state.domain_dim();
  for (std::size_t j = 1; j <= state.stage(); ++j) {
    Matrix acc = Matrix::Zero(m, n);
    for (std::size_t i = 1; i <= j; ++i) acc += state.family.coefficient(static_cast<long>(i) - 1) * state.M(i, j);
    if (acc != state.ledger[j].s) return failed(name, "stage " + str(static_cast<long>(j)));
  }
  return pass(name, "stages 1.." + str(static_cast<long>(state.stage())));
}

Check check_triangular_system(const RecursionState& state) {
  const std::string name = "triangular_system";
  const Index n = state.domain_dim();
  for (std::size_t j = 1; j <= state.stage(); ++j)
    for (std::size_t i = 1; i <= j; ++i) {
      Matrix acc = state.E(i, j);
      for (std::size_t v = i + 1; v <= j; ++v) acc += state.ledger[i].s_plus * state.ledger[v].s_bar * state.E(v, j);
      const Matrix want = i == j ? Matrix(Matrix::Identity(n, n)) : Matrix(Matrix::Zero(n, n));
      if (acc != want) return failed(name, "column " + str(static_cast<long>(j)) + ", row " + str(static_cast<long>(i)));
    }
  return pass(name, "columns 1.." + str(static_cast<long>(state.stage())));
}

Check check_e_zero_pattern(const RecursionState& state) {
  const std::string name = "e_zero_pattern";
  if (!state.stabilization_k) return failed(name, "not stabilized");
  const std::size_t k = *state.stabilization_k;
  for (std::size_t j = k + 3; j <= state.stage(); ++j)
    for (std::size_t i = k + 2; i < j; ++i)
      if (!is_zero(state.E(i, j)))
        return failed(name, "E(" + str(static_cast<long>(i)) + "," + str(static_cast<long>(j)) + ") != 0");
  return pass(name, "columns through " + str(static_cast<long>(state.stage())));
}

Check check_m_toeplitz_shift(const RecursionState& state) {
  const std::string name = "m_toeplitz_shift";
  if (!state.stabilization_k) return failed(name, "not stabilized");
  const std::size_t k = *state.stabilization_k;
  for (std::size_t l = 1; k + 1 + l <= state.stage(); ++l)
    for (std::size_t r = 1; r <= l; ++r)
      if (state.M(k + 1 + r, k + 1 + l) != state.M(k + r, k + l))
        return failed(name, "column " + str(static_cast<long>(k + 1 + l)) + ", row " + str(static_cast<long>(k + 1 + r)));
  return pass(name, "columns through " + str(static_cast<long>(state.stage())));
}

Check check_stabilization_conditions(const RecursionState& state) {
  const std::string name = "stabilization_conditions";
  if (!state.stabilization_k) return failed(name, "not stabilized");
  const std::size_t k = *state.stabilization_k;
  if (state.ledger[k + 1].kernel_complement.dim() == 0) return failed(name, "Nc_{k+1} = {0}");
  if (state.ledger[k + 1].range.dim() == 0) return failed(name, "R_{k+1} = {0}");
  for (std::size_t i = k + 2; i <= state.stage(); ++i)
    if (state.ledger[i].kernel_complement.dim() != 0 || state.ledger[i].range.dim() != 0 ||
        !state.ledger[i].kernel.same_as(state.ledger[k + 1].kernel))
      return failed(name, "stage " + str(static_cast<long>(i)) + " still splits");
  return pass(name, "k = " + str(static_cast<long>(k)) + ", stages through " + str(static_cast<long>(state.stage())));
}

Check check_stage_properties(const RecursionState& state) {
  const std::string name = "stage_properties";
  const std::size_t last = state.stabilization_k ? *state.stabilization_k + 1 : state.stage();
  for (std::size_t i = 1; i <= last; ++i) {
    const Stage& st = state.ledger[i];
    if (!is_zero(Matrix(st.s * st.kernel.basis))) return failed(name, "S_i N_i != 0 at stage " + str(static_cast<long>(i)));
    const Matrix image = st.s * st.kernel_complement.basis;
    if (rank<Rat>(image) != st.kernel_complement.dim() || !Space(column_basis<Rat>(image).basis).same_as(st.range))
      return failed(name, "S_i Nc_i != R_i at stage " + str(static_cast<long>(i)));
  }
  return pass(name, "stages 1.." + str(static_cast<long>(last)));
}

Check check_triangularization(const DiagonalizationResult& result) {
  const std::string name = "triangularization";
  return guarded(name, [&] {
    const auto& state = result.state;
    const Series s = state.family * result.phi;
    for (long i = 0; i <= result.order; ++i) {
      const Matrix c = s.coefficient(i);
      const std::size_t stage = static_cast<std::size_t>(i) + 1;
      if (c != state.ledger[stage].s) return failed(name, "coefficient " + str(i) + " differs from S_" + str(i + 1));
      if (stage >= result.k + 2) {
        if (!is_zero(Matrix(c * result.tail_kernel.basis))) return failed(name, "S_" + str(i + 1) + " N_{k+1} != 0");
        if (!result.tail_range_complement.contains(column_basis<Rat>(c)))
          return failed(name, "range of S_" + str(i + 1) + " leaves Rc_{k+1}");
      }
    }
    return pass(name, "through order " + str(result.order));
  });
}

Check check_residual(const DiagonalizationResult& result) {
  const std::string name = "residual";
  return guarded(name, [&] {
    const Series& l = result.state.family;
    const Series lhs = result.psi_inv * (l * result.phi);
    const Series rhs = delta_series(result.delta_terms, l.rows(), l.cols());
    if (const long bad = lhs.first_difference(rhs, result.order); bad >= 0)
      return failed(name, "first nonzero order " + str(bad));
    return pass(name, "psi^-1 L phi - Delta = 0 through order " + str(result.order));
  });
}

Check check_generalized_inverse(const DiagonalizationResult& result, long order) {
  const std::string name = "generalized_inverse";
  return guarded(name, [&] {
    const long k = static_cast<long>(result.k);
    const long t = capped(result.state.family, order, 3 * k);
    if (t < 0) return pass(name, "skipped: input truncation too short for any order");
    const Laurent lp = generalized_inverse(result, t + k);
    const Laurent l = Laurent::from_series(result.state.family);
    if (!(l * lp * l).equal_through(l, t)) return failed(name, "L L+ L != L");
    if (!(lp * l * lp).equal_through(lp, t)) return failed(name, "L+ L L+ != L+");
    return pass(name, "L L+ L = L and L+ L L+ = L+ through order " + str(t));
  });
}

Check check_projectors(const DiagonalizationResult& result, long order) {
  const std::string name = "projectors";
  return guarded(name, [&] {
    const long t = std::min(order, result.order);
    const ProjectorFamilies p = projector_families(result, t);
    Matrix p_sum = Matrix::Zero(result.state.domain_dim(), result.state.domain_dim());
    Matrix cal_sum = Matrix::Zero(result.state.codomain_dim(), result.state.codomain_dim());
    for (const auto& st : result.decomposition.stages) {
      p_sum += st.p;
      cal_sum += st.cal_p;
    }
    if (!(p.left * p.left).equal_through(p.left, t)) return failed(name, "left family is not idempotent");
    if (!(p.right * p.right).equal_through(p.right, t)) return failed(name, "right family is not idempotent");
    if (p.left.coefficient(0) != p_sum || p.right.coefficient(0) != cal_sum)
      return failed(name, "constant terms differ from the projection sums");
    return pass(name, "idempotent through order " + str(t));
  });
}

Check check_smith(const DiagonalizationResult& result) {
  const std::string name = "smith";
  return guarded(name, [&] {
    const SmithFactorization f = smith_factorize(result);
    const Series& l = result.state.family;
    const Series p = f.p_series();
    const Series delta = delta_series(result.delta_terms, l.rows(), l.cols());
    const long k = static_cast<long>(result.k);
    if (!(f.s_p * p).equal_through(delta, k)) return failed(name, "S_P P != Delta");
    const long t = result.order;
    if (!(l * result.phi).equal_through(result.psi * f.s_p * p, t)) return failed(name, "L phi != psi S_P P");
    const Laurent blown = Laurent::from_series(result.psi_inv * (l * result.phi)) * f.p_inverse();
    if (!blown.equal_through(Laurent::from_series(Series::constant(f.s_p)), t - k))
      return failed(name, "psi^-1 L phi P^-1 != S_P");
    if (f.exponents.size() != result.state.generic_rank) return failed(name, "exponent count differs from the generic rank");
    return pass(name, "S_P P = Delta; L phi = psi S_P P through order " + str(t) + "; blow-up through order " + str(t - k));
  });
}

Check check_kernel_family(const DiagonalizationResult& result, long order) {
  const std::string name = "kernel_family";
  return guarded(name, [&] {
    const long t = std::min(order, result.order);
    const SubspaceFamilies fam = kernel_range_families(result, t);
    const Series prod = result.state.family * fam.kernel;
    const Series zero = Series::constant(Matrix::Zero(prod.rows(), prod.cols()));
    if (const long bad = prod.first_difference(zero, t); bad >= 0)
      return failed(name, "L N(eps) nonzero at order " + str(bad));
    return pass(name, str(fam.kernel.cols()) + " columns, L N(eps) = 0 through order " + str(t));
  });
}

Check check_jordan_chains(const DiagonalizationResult& result, std::vector<long>* nullities) {
  const std::string name = "jordan_chains";
  return guarded(name, [&] {
    const auto& state = result.state;
    std::string dims;
    long expected = 0;
    for (std::size_t l = 1; l <= result.k + 1; ++l) {
      expected += state.ledger[l].kernel.dim();
      const Matrix block = oracle::toeplitz_block(state.family, l).matrix;
      const long nullity = static_cast<long>(block.cols() - rank<Rat>(block));
      if (nullities) nullities->push_back(nullity);
      dims += (l > 1 ? "," : "") + str(nullity);
      if (nullity != expected)
        return failed(name, "l = " + str(static_cast<long>(l)) + ": Toeplitz nullity " + str(nullity) +
                                " != sum dim N_i = " + str(expected));
      const JordanChainBasis chains = jordan_chain_basis(state, l);
      if (!is_zero(Matrix(block * chains.generator)))
        return failed(name, "l = " + str(static_cast<long>(l)) + ": a chain leaves the Toeplitz kernel");
      if (rank<Rat>(chains.generator) != expected)
        return failed(name, "l = " + str(static_cast<long>(l)) + ": chain generators are dependent");
    }
    return pass(name, "Toeplitz nullities (" + dims + ") for l = 1.." + str(static_cast<long>(result.k + 1)));
  });
}

Check check_oracle_inverse(const DiagonalizationResult& result, long order) {
  const std::string name = "oracle_inverse";
  return guarded(name, [&] {
    const Series& l = result.state.family;
    if (l.rows() != l.cols() || result.state.generic_rank != static_cast<std::size_t>(l.rows()))
      return pass(name, "skipped: L is not square and generically invertible");
    const long k = static_cast<long>(result.k);
    const long t = capped(l, order, 3 * k);
    if (t < 0) return pass(name, "skipped: input truncation too short for any order");
    const Laurent direct = oracle::direct_laurent_inverse(l, l.rows() * std::max(1L, l.trunc_order()), t);
    const Laurent ours = generalized_inverse(result, t);
    if (direct.pole_order() != ours.pole_order())
      return failed(name, "pole orders differ: " + str(direct.pole_order()) + " vs " + str(ours.pole_order()));
    if (!direct.equal_through(ours, t)) return failed(name, "coefficients differ");
    return pass(name, "pole " + str(ours.pole_order()) + ", equal from order " + str(-ours.pole_order()) + " through " + str(t));
  });
}

CheckReport verify_all(const DiagonalizationResult& result) {
  const auto& state = result.state;
  CheckReport out;
  out.checks.push_back(check_lemma2(state));
  out.checks.push_back(check_triangular_system(state));
  out.checks.push_back(check_e_zero_pattern(state));
  out.checks.push_back(check_m_toeplitz_shift(state));
  out.checks.push_back(check_stabilization_conditions(state));
  out.checks.push_back(check_stage_properties(state));
  out.checks.push_back(check_triangularization(result));
  out.checks.push_back(check_residual(result));
  out.checks.push_back(check_generalized_inverse(result, result.order));
  out.checks.push_back(check_projectors(result, result.order));
  out.checks.push_back(check_smith(result));
  out.checks.push_back(check_kernel_family(result, result.order));
  out.checks.push_back(check_jordan_chains(result));
  out.checks.push_back(check_oracle_inverse(result, result.order));
  return out;
}

}  // namespace opdiag

#include "opdiag/recursion.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace opdiag {

namespace {

/// Re-throws an error from a subspace primitive with the stage index attached.
template <class F>
auto at_stage(std::size_t stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.context().stage) throw;
    ErrorContext ctx = e.context();
    ctx.stage = stage;
    throw Error(e.kind(), e.what(), std::move(ctx));
  }
}

std::size_t default_budget(const Series& family) {
  return static_cast<std::size_t>(family.rows() + family.cols()) + 2;
}

}  // namespace

Space Decomposition::kernel(std::size_t i, Index domain_dim) const {
  if (i == 0) return Space::full(domain_dim);
  return (*this)[i].kernel;
}

Space Decomposition::range_complement(std::size_t i, Index codomain_dim) const {
  if (i == 0) return Space::full(codomain_dim);
  return (*this)[i].range_complement;
}

std::size_t Decomposition::total_range_dim(std::size_t through) const {
  std::size_t total = 0;
  for (std::size_t i = 1; i <= std::min(through, size()); ++i)
    total += static_cast<std::size_t>((*this)[i].range.dim());
  return total;
}

std::size_t generic_rank(const Series& family, long degree_hint) {
  const Index full = std::min(family.rows(), family.cols());
  const long samples = std::max(0L, degree_hint) * static_cast<long>(full) + 1;
  Index best = 0;
  for (long t = 1; t <= samples && best < full; ++t)
    best = std::max(best, rank<Rat>(family.evaluate(Rat(t))));
  return static_cast<std::size_t>(best);
}

RecursionState start_recursion(Series family, ComplementPlan complements) {
  RecursionState state;
  state.generic_rank = generic_rank(family, family.trunc_order());
  state.family = std::move(family);
  state.complements = std::move(complements);
  return state;
}

std::vector<Matrix> build_E_column(const RecursionState& state, std::size_t j) {
  if (j == 0 || j > state.stage())
    fail(ErrorKind::Input, "build_E_column: stage " + std::to_string(j) + " splits are not complete");
  const Index n = state.domain_dim();
  std::vector<Matrix> col(j, Matrix::Zero(n, n));
  col[j - 1] = Matrix::Identity(n, n);
  for (std::size_t i = j - 1; i >= 1; --i) {
    const Stage& st = state.ledger[i];
    if (st.range.dim() == 0) continue;  // S_i^+ = 0
    Matrix acc = Matrix::Zero(state.codomain_dim(), n);
    for (std::size_t v = i + 1; v <= j; ++v) {
      const Matrix& e = col[v - 1];
      if (!is_zero(e)) acc += state.ledger[v].s_bar * e;
    }
    col[i - 1] = -(st.s_plus * acc);
  }
  return col;
}

std::vector<Matrix> build_M_column(const RecursionState& state, std::size_t j) {
  if (j == 0 || state.e_cols.size() < j || state.m_cols.size() < j - 1)
    fail(ErrorKind::Input, "build_M_column: E column " + std::to_string(j) + " or earlier M columns missing");
  const Index n = state.domain_dim();
  const auto& e = state.e_cols[j - 1];
  std::vector<Matrix> col(j, Matrix::Zero(n, n));
  col[0] = e[0];
  for (std::size_t i = 2; i <= j; ++i) {
    Matrix acc = Matrix::Zero(n, n);
    for (std::size_t v = i; v <= j; ++v) {
      if (is_zero(e[v - 1])) continue;
      acc += state.M(i - 1, v - 1) * e[v - 1];
    }
    col[i - 1] = std::move(acc);
  }
  return col;
}

std::optional<std::size_t> detect_stabilization(const RecursionState& state) {
  if (state.generic_rank == 0) return std::nullopt;
  if (state.ledger.total_range_dim(state.stage()) != state.generic_rank) return std::nullopt;
  std::size_t last = 0;
  for (std::size_t i = 1; i <= state.stage(); ++i)
    if (state.ledger[i].range.dim() > 0) last = i;
  return last - 1;
}

RecursionState run_stage(RecursionState state) {
  const std::size_t j = state.stage() + 1;
  const Series& family = state.family;
  const Index n = state.domain_dim();
  const Index m = state.codomain_dim();

  if (!family.is_polynomial() && static_cast<long>(j) - 1 > family.trunc_order())
    fail(ErrorKind::Truncation, "L truncation exhausted: coefficient " + std::to_string(j - 1) + " is not known",
         {j, "L", m, n});

  Stage st;
  if (j == 1) {
    st.s_bar = family.coefficient(0);
  } else {
    st.s_bar = Matrix::Zero(m, n);
    for (std::size_t v = 1; v <= j - 1; ++v) {
      const Matrix lv = family.coefficient(static_cast<long>(v));
      if (!is_zero(lv)) st.s_bar += lv * state.M(v, j - 1);
    }
  }
  st.s = st.s_bar;
  for (std::size_t i = 1; i < j; ++i)
    if (state.ledger[i].range.dim() > 0) st.s -= state.ledger[i].cal_p * st.s_bar;

  const Space prev_kernel = state.ledger.kernel(j - 1, n);
  const Space prev_complement = state.ledger.range_complement(j - 1, m);

  at_stage(j, [&] {
    auto split = restrict_and_split<Rat>(st.s, prev_kernel);
    st.kernel = std::move(split.kernel);
    st.range = std::move(split.image);

    const auto given = [](const std::map<std::size_t, Matrix>& plan, std::size_t stage) -> std::optional<Matrix> {
      if (auto it = plan.find(stage); it != plan.end()) return it->second;
      return std::nullopt;
    };
    st.kernel_complement = choose_complement<Rat>(prev_kernel, st.kernel, given(state.complements.kernel_complements, j));
    st.range_complement =
        choose_complement<Rat>(prev_complement, st.range, given(state.complements.range_complements, j));

    std::vector<Space> domain_parts;
    std::vector<Space> codomain_parts;
    for (std::size_t i = 1; i < j; ++i) {
      domain_parts.push_back(state.ledger[i].kernel_complement);
      codomain_parts.push_back(state.ledger[i].range);
    }
    domain_parts.push_back(st.kernel_complement);
    domain_parts.push_back(st.kernel);
    codomain_parts.push_back(st.range);
    codomain_parts.push_back(st.range_complement);

    st.p = projection_matrix<Rat>(domain_parts, j - 1);
    st.cal_p = projection_matrix<Rat>(codomain_parts, j - 1);
    st.s_plus = restricted_inverse<Rat>(st.s, st.kernel_complement, st.range, codomain_parts);
    return 0;
  });

  state.ledger.stages.push_back(std::move(st));
  state.e_cols.push_back(build_E_column(state, j));
  state.m_cols.push_back(build_M_column(state, j));
  if (!state.stabilization_k) state.stabilization_k = detect_stabilization(state);
  return state;
}

RecursionState run_until_stable(RecursionState state, std::size_t max_stages) {
  if (state.generic_rank == 0)
    fail(ErrorKind::Input, "the family is identically zero", {{}, "L", state.codomain_dim(), state.domain_dim()});
  const std::size_t budget = max_stages ? max_stages : default_budget(state.family);
  while (!state.stabilization_k) {
    const std::size_t next = state.stage() + 1;
    if (next > budget)
      fail(ErrorKind::NoStabilization, "no stabilization within " + std::to_string(budget) + " stages",
           {state.stage(), "L", state.codomain_dim(), state.domain_dim()});
    if (!state.family.is_polynomial() && static_cast<long>(next) - 1 > state.family.trunc_order())
      fail(ErrorKind::NoStabilization,
           "stabilization undetermined at truncation order " + std::to_string(state.family.trunc_order()),
           {state.stage(), "L", state.codomain_dim(), state.domain_dim()});
    state = run_stage(std::move(state));
  }
  return state;
}

RecursionState extend_to(RecursionState state, std::size_t stages) {
  while (state.stage() < stages) state = run_stage(std::move(state));
  return state;
}

JordanChainBasis jordan_chain_basis(const RecursionState& state, std::size_t length) {
  if (length == 0) fail(ErrorKind::Input, "Jordan chains have length >= 1");
  if (state.stage() < length)
    fail(ErrorKind::Input, "jordan_chain_basis: stages 1.." + std::to_string(length) + " are required",
         {state.stage(), "", -1, -1});
  const Index n = state.domain_dim();
  const Index l = static_cast<Index>(length);

  Matrix m_upper = Matrix::Zero(n * l, n * l);
  for (std::size_t j = 1; j <= length; ++j)
    for (std::size_t i = 1; i <= j; ++i)
      m_upper.block(static_cast<Index>(i - 1) * n, static_cast<Index>(j - 1) * n, n, n) = state.M(i, j);

  Index total = 0;
  for (std::size_t i = 1; i <= length; ++i) total += state.ledger[i].kernel.dim();
  Matrix kernels = Matrix::Zero(n * l, total);
  Index at = 0;
  for (std::size_t i = 1; i <= length; ++i) {
    const Matrix& basis = state.ledger[i].kernel.basis;
    kernels.block(static_cast<Index>(i - 1) * n, at, n, basis.cols()) = basis;
    at += basis.cols();
  }

  JordanChainBasis out;
  out.length = length;
  out.generator = m_upper * kernels;
  const Index roots = state.ledger[length].kernel.dim();
  for (Index c = total - roots; c < total; ++c) {
    JordanChain chain;
    for (Index block = 0; block < l; ++block) chain.vectors.push_back(out.generator.col(c).segment(block * n, n));
    out.chains.push_back(std::move(chain));
  }
  return out;
}

std::optional<std::size_t> rank_of_root(const RecursionState& state, const Vector& b0) {
  if (!state.stabilization_k) fail(ErrorKind::Input, "rank_of_root: recursion has not stabilized");
  if (b0.size() != state.domain_dim())
    fail(ErrorKind::Input, "rank_of_root: vector size mismatch", {{}, "b0", b0.size(), 1});
  if (is_zero(b0)) fail(ErrorKind::Input, "rank_of_root: the zero vector is not a root candidate");
  const std::size_t k = *state.stabilization_k;
  if (state.ledger[k + 1].kernel.contains(b0)) return std::nullopt;
  std::size_t r = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (!state.ledger[i].kernel.contains(b0)) break;
    r = i;
  }
  return r;
}

PartialTriangularization partial_triangularize(const RecursionState& state, std::size_t k) {
  if (state.stage() < k + 1)
    fail(ErrorKind::Input, "partial_triangularize: stage " + std::to_string(k + 1) + " is required",
         {state.stage(), "", -1, -1});
  if (state.family.known_through() < static_cast<long>(k))
    fail(ErrorKind::Truncation, "partial_triangularize: L is not known through order " + std::to_string(k));
  const Index n = state.domain_dim();
  std::vector<Matrix> coeffs{Matrix::Identity(n, n)};
  for (std::size_t i = 1; i <= k; ++i) coeffs.push_back(state.M(k + 1 - i, k + 1));
  PartialTriangularization out;
  out.transform = Series::polynomial(n, n, std::move(coeffs));
  out.product = series_mul(state.family, out.transform);
  return out;
}

}  // namespace opdiag

#include "opdiag/diagonalization.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace opdiag {

namespace {

std::size_t stabilized_k(const RecursionState& state) {
  if (!state.stabilization_k) fail(ErrorKind::Input, "the recursion has not stabilized", {state.stage(), "", -1, -1});
  return *state.stabilization_k;
}

void require_stages(const RecursionState& state, std::size_t needed, const char* what) {
  if (state.stage() < needed)
    fail(ErrorKind::Truncation,
         std::string(what) + ": needs stages through " + std::to_string(needed) + ", have " +
             std::to_string(state.stage()),
         {state.stage(), "", -1, -1});
}

Series phi_from(const RecursionState& state, std::size_t k, long order) {
  std::vector<Matrix> coeffs;
  for (long i = 0; i <= order; ++i) coeffs.push_back(state.M(k + 1, k + 1 + static_cast<std::size_t>(i)));
  return Series::truncated(state.domain_dim(), state.domain_dim(), std::move(coeffs));
}

}  // namespace

long default_order(std::size_t k) { return std::max(2 * static_cast<long>(k) + 4, 12L); }

Series phi_series(const RecursionState& state, long order) {
  const std::size_t k = stabilized_k(state);
  if (order < 0) fail(ErrorKind::Input, "phi_series: negative order");
  require_stages(state, k + 1 + static_cast<std::size_t>(order), "phi_series");
  return phi_from(state, k, order);
}

Series psi_series(const RecursionState& state, long order) {
  const std::size_t k = stabilized_k(state);
  if (order < 0) fail(ErrorKind::Input, "psi_series: negative order");
  require_stages(state, k + 1 + static_cast<std::size_t>(order), "psi_series");
  const Index m = state.codomain_dim();
  std::vector<Matrix> coeffs{Matrix::Identity(m, m)};
  for (long i = 1; i <= order; ++i) {
    Matrix acc = Matrix::Zero(m, m);
    for (std::size_t j = 1; j <= k + 1; ++j) {
      const Stage& st = state.ledger[j];
      if (st.range.dim() == 0) continue;
      const Matrix& s = state.ledger[j + static_cast<std::size_t>(i)].s;
      if (!is_zero(s)) acc += s * st.s_plus;
    }
    coeffs.push_back(std::move(acc));
  }
  return Series::truncated(m, m, std::move(coeffs));
}

std::vector<DeltaTerm> delta(const RecursionState& state) {
  const std::size_t k = stabilized_k(state);
  require_stages(state, k + 1, "delta");
  std::vector<DeltaTerm> terms;
  for (std::size_t i = 1; i <= k + 1; ++i) terms.push_back({i - 1, state.ledger[i].s * state.ledger[i].p});
  return terms;
}

Series delta_series(const std::vector<DeltaTerm>& terms, Index rows, Index cols) {
  std::size_t degree = 0;
  for (const auto& t : terms) degree = std::max(degree, t.power);
  std::vector<Matrix> coeffs(degree + 1, Matrix::Zero(rows, cols));
  for (const auto& t : terms) coeffs[t.power] += t.coefficient;
  return Series::polynomial(rows, cols, std::move(coeffs));
}

DiagonalizationResult diagonalize(const Series& family, const DiagonalizeOptions& options) {
  RecursionState state = run_until_stable(start_recursion(family, options.complements), options.max_stages);
  const std::size_t k = *state.stabilization_k;

  DiagonalizationResult out;
  out.k = k;
  out.truncated_input = !family.is_polynomial();

  const long cap = family.known_through() - static_cast<long>(k);
  if (options.order) {
    if (*options.order < 0) fail(ErrorKind::Input, "negative truncation order");
    if (*options.order > cap)
      fail(ErrorKind::Truncation,
           "order " + std::to_string(*options.order) + " needs L through order " +
               std::to_string(*options.order + static_cast<long>(k)) + ", input is truncated at " +
               std::to_string(family.trunc_order()),
           {{}, "L", family.rows(), family.cols()});
    out.order = *options.order;
  } else {
    out.order = std::min(default_order(k), cap);
    if (out.order < 0)
      fail(ErrorKind::Truncation, "input truncation is shorter than the stabilization index",
           {{}, "L", family.rows(), family.cols()});
  }

  state = extend_to(std::move(state), k + 1 + static_cast<std::size_t>(out.order));
  out.phi = phi_series(state, out.order);
  out.psi = psi_series(state, out.order);
  out.phi_inv = series_inverse(out.phi, out.order);
  out.psi_inv = series_inverse(out.psi, out.order);
  out.delta_terms = delta(state);

  out.decomposition.stages.assign(state.ledger.stages.begin(),
                                  state.ledger.stages.begin() + static_cast<long>(k + 1));
  out.tail_kernel = state.ledger[k + 1].kernel;
  out.tail_range_complement = state.ledger[k + 1].range_complement;

  const Series lhs = out.psi_inv * (family.truncate(out.order) * out.phi);
  const Series rhs = delta_series(out.delta_terms, family.rows(), family.cols());
  out.residual.checked_through = out.order;
  if (const long bad = lhs.first_difference(rhs, out.order); bad >= 0) {
    out.residual.first_failing_order = bad;
    fail(ErrorKind::Internal, "diagonalization residual is nonzero at order " + std::to_string(bad),
         {{}, "psi^-1 L phi - Delta", family.rows(), family.cols()});
  }
  out.residual.ok = true;
  out.state = std::move(state);
  return out;
}

Transforms transforms_to(const DiagonalizationResult& result, long order) {
  if (order < 0) fail(ErrorKind::Input, "negative order");
  if (order <= result.order)
    return {result.phi.truncate(order), result.psi.truncate(order), result.phi_inv.truncate(order),
            result.psi_inv.truncate(order)};
  const RecursionState state = extend_to(result.state, result.k + 1 + static_cast<std::size_t>(order));
  Transforms t;
  t.phi = phi_series(state, order);
  t.psi = psi_series(state, order);
  t.phi_inv = series_inverse(t.phi, order);
  t.psi_inv = series_inverse(t.psi, order);
  return t;
}

Laurent delta_inverse(const DiagonalizationResult& result) {
  const std::size_t k = result.k;
  std::vector<Matrix> coeffs;
  for (std::size_t t = 0; t <= k; ++t) coeffs.push_back(result.decomposition[k + 1 - t].s_plus);
  const Index n = result.state.domain_dim();
  const Index m = result.state.codomain_dim();
  return Laurent(n, m, static_cast<long>(k), std::move(coeffs), Tail::Exact);
}

Laurent generalized_inverse(const DiagonalizationResult& result, long order) {
  const Transforms t = transforms_to(result, order + static_cast<long>(result.k));
  const Laurent product =
      Laurent::from_series(t.phi) * delta_inverse(result) * Laurent::from_series(t.psi_inv);
  return product.truncate(order);
}

SubspaceFamilies kernel_range_families(const DiagonalizationResult& result, long order) {
  const Transforms t = transforms_to(result, order);
  std::vector<Matrix> ranges;
  for (const auto& st : result.decomposition.stages) ranges.push_back(st.range.basis);
  const Matrix range_basis = hstack<Rat>(ranges, result.state.codomain_dim());
  return {t.phi * result.tail_kernel.basis, t.psi * range_basis};
}

ProjectorFamilies projector_families(const DiagonalizationResult& result, long order) {
  const Transforms t = transforms_to(result, order);
  const Index n = result.state.domain_dim();
  const Index m = result.state.codomain_dim();
  Matrix p_sum = Matrix::Zero(n, n);
  Matrix cal_p_sum = Matrix::Zero(m, m);
  for (const auto& st : result.decomposition.stages) {
    p_sum += st.p;
    cal_p_sum += st.cal_p;
  }
  return {t.phi * p_sum * t.phi_inv, t.psi * cal_p_sum * t.psi_inv};
}

Series SmithFactorization::p_series() const {
  return delta_series(p_terms, s_p.cols(), s_p.cols());
}

Laurent SmithFactorization::p_inverse() const {
  std::size_t k = 0;
  for (const auto& t : p_terms) k = std::max(k, t.power);
  const Index n = s_p.cols();
  std::vector<Matrix> coeffs(k + 1, Matrix::Zero(n, n));
  for (const auto& t : p_terms) coeffs[k - t.power] += t.coefficient;
  return Laurent(n, n, static_cast<long>(k), std::move(coeffs), Tail::Exact);
}

SmithFactorization smith_factorize(const DiagonalizationResult& result) {
  SmithFactorization out;
  const Index n = result.state.domain_dim();
  const Index m = result.state.codomain_dim();
  out.s_p = Matrix::Zero(m, n);
  for (std::size_t i = 1; i <= result.k + 1; ++i) {
    const Stage& st = result.decomposition[i];
    out.s_p += st.s * st.p;
    out.p_terms.push_back({i - 1, st.p});
    for (Index c = 0; c < st.kernel_complement.dim(); ++c) out.exponents.push_back(i - 1);
  }
  out.a_series = result.psi * out.s_p;
  return out;
}

}  // namespace opdiag

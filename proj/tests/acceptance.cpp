// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "opdiag/checks.hpp"
#include "opdiag/oracles.hpp"
#include "random_families.hpp"

using namespace opdiag;
using fixtures::mat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::ostringstream notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) notes << "first failure: " << what;
      passed = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int id, const char* title, const std::function<void(Outcome&)>& body, double limit_s) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= limit_s) out.expect(false, "time limit exceeded");
  std::printf("%s criterion %d: %s (%.3f s, limit %.1f s)%s%s\n", out.passed ? "PASS" : "FAIL", id, title, elapsed,
              limit_s, out.notes.str().empty() ? "" : "; ", out.notes.str().c_str());
  std::fflush(stdout);
  return out.passed;
}

Series poly(std::vector<Matrix> c) {
  const Index m = c.front().rows();
  const Index n = c.front().cols();
  return Series::polynomial(m, n, std::move(c));
}

/// The random families shared by criteria 3, 4 and 6.
std::vector<Series> property_families() {
  testing_support::FamilyGenerator gen(20240611u);
  std::vector<Series> out;
  while (out.size() < 220) {
    Series s = gen.any_family();
    if (!testing_support::is_zero_family(s)) out.push_back(std::move(s));
  }
  return out;
}

DiagonalizeOptions property_options() {
  DiagonalizeOptions o;
  o.order = 12;
  o.max_stages = 40;
  return o;
}

void example1(Outcome& out) {
  const DiagonalizationResult r = diagonalize(fixtures::example1());
  out.expect(r.k == 3, "k = 3");
  const std::vector<std::pair<Index, Index>> dims{{1, 1}, {1, 1}, {0, 0}, {1, 1}};
  for (std::size_t i = 1; i <= 4; ++i) {
    const Stage& st = r.decomposition[i];
    out.expect(st.kernel_complement.dim() == dims[i - 1].first && st.range.dim() == dims[i - 1].second,
               "stage dims at " + std::to_string(i));
  }
  out.expect(r.tail_kernel.dim() == 0 && r.tail_range_complement.dim() == 0, "N_4 = Rc_4 = {0}");

  const Series delta = poly({mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}), mat({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}),
                             fixtures::zeros(3, 3), mat({{0, 0, 0}, {0, 0, 0}, {0, -1, 0}})});
  out.expect(delta_series(r.delta_terms, 3, 3).equal_through(delta, 12), "Delta");
  const Series psi = poly({fixtures::eye(3), mat({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}), fixtures::zeros(3, 3),
                           mat({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}})});
  out.expect(r.psi.equal_through(psi, r.order), "psi");
  const auto phi = fixtures::example1_phi(8);
  for (long i = 0; i <= 8; ++i) out.expect(r.phi.coefficient(i) == phi.at(i), "phi coefficient " + std::to_string(i));

  const Laurent inv = generalized_inverse(r, 6);
  out.expect(inv.pole_order() == 3, "L+ pole order 3");
  const auto expected = fixtures::example1_inverse(6);
  for (long p = -3; p <= 6; ++p) out.expect(inv.coefficient(p) == expected.at(p), "L+ coefficient " + std::to_string(p));
}

void trivial(Outcome& out) {
  const Matrix l0 = mat({{2, 1, 0}, {1, 1, 0}, {0, 3, 1}});
  auto start = Clock::now();
  const DiagonalizationResult c = diagonalize(Series::constant(l0));
  out.expect(c.k == 0, "constant: k = 0");
  out.expect(c.phi.equal_through(Series::identity(3), c.order) && c.psi.equal_through(Series::identity(3), c.order),
             "constant: phi = psi = I");
  out.expect(c.delta_terms.size() == 1 && c.delta_terms[0].coefficient == l0, "constant: Delta = L0");
  const Laurent ci = generalized_inverse(c, 12);
  out.expect(ci.pole_order() == 0 && ci.coefficient(0) == inverse<Rat>(l0), "constant: L+ = L0^-1");
  for (long i = 1; i <= 12; ++i) out.expect(is_zero(ci.coefficient(i)), "constant: L+ higher coefficients vanish");
  out.expect(seconds_since(start) < 0.1, "constant family under 0.1 s");

  start = Clock::now();
  const Series eps_i = poly({fixtures::zeros(3, 3), fixtures::eye(3)});
  const DiagonalizationResult s = diagonalize(eps_i);
  out.expect(s.k == 1, "eps I: k = 1");
  out.expect(delta_series(s.delta_terms, 3, 3).equal_through(eps_i, 12), "eps I: Delta = eps I");
  const Laurent si = generalized_inverse(s, 12);
  out.expect(si.pole_order() == 1 && si.coefficient(-1) == fixtures::eye(3), "eps I: L+ = eps^-1 I");
  for (long i = 0; i <= 12; ++i) out.expect(is_zero(si.coefficient(i)), "eps I: L+ regular part vanishes");
  out.expect(seconds_since(start) < 0.1, "eps I under 0.1 s");
}

void properties(Outcome& out, const std::vector<DiagonalizationResult>& results) {
  out.expect(results.size() >= 200, "at least 200 families");
  std::size_t rectangular = 0;
  for (std::size_t f = 0; f < results.size(); ++f) {
    const auto& r = results[f];
    const std::string tag = " (family " + std::to_string(f) + ")";
    if (r.state.domain_dim() != r.state.codomain_dim()) ++rectangular;
    out.expect(r.residual.ok && r.residual.checked_through >= 12, "residual" + tag);
    for (const Check& c : {check_residual(r), check_lemma2(r.state), check_e_zero_pattern(r.state),
                           check_m_toeplitz_shift(r.state), check_generalized_inverse(r, 12)})
      out.expect(c.passed, c.name + tag + ": " + c.detail);
  }
  out.notes << results.size() << " families, " << rectangular << " rectangular";
}

void oracle_equivalence(Outcome& out, const std::vector<DiagonalizationResult>& results) {
  std::size_t compared = 0;
  std::vector<const DiagonalizationResult*> all;
  const DiagonalizationResult ex1 = diagonalize(fixtures::example1(), property_options());
  all.push_back(&ex1);
  for (const auto& r : results) all.push_back(&r);
  for (std::size_t f = 0; f < all.size(); ++f) {
    const auto& r = *all[f];
    const std::string tag = " (family " + std::to_string(f) + ")";
    const Check inv = check_oracle_inverse(r, 12);
    out.expect(inv.passed, "oracle inverse" + tag + ": " + inv.detail);
    if (inv.passed && inv.detail.find("skipped") == std::string::npos) ++compared;
    const Check chains = check_jordan_chains(r);
    out.expect(chains.passed, "toeplitz nullities" + tag + ": " + chains.detail);
  }
  out.expect(compared >= 50, "at least 50 inverse comparisons");
  out.notes << compared << " inverses compared through eps^12, " << all.size() << " nullity ladders";
}

void companions(Outcome& out) {
  testing_support::FamilyGenerator gen(777u);
  DiagonalizeOptions opts;
  opts.max_stages = 40;

  std::size_t bounds = 0;
  std::vector<Series> families{fixtures::example1()};
  while (families.size() < 60) {
    const Series s = gen.family(gen.uniform(1, 4), gen.uniform(1, 4), gen.uniform(1, 3));
    bool positive_degree = false;
    for (long i = 1; i <= s.trunc_order(); ++i) positive_degree |= !is_zero(s.coefficient(i));
    if (positive_degree) families.push_back(s);
  }
  for (std::size_t f = 0; f < families.size(); ++f) {
    const oracle::AugmentedPencil pencil = oracle::linearize_polynomial(families[f]);
    const auto state = run_until_stable(start_recursion(families[f]), opts.max_stages);
    const auto bar = run_until_stable(start_recursion(pencil.pencil()), 4 * opts.max_stages);
    const std::size_t k = *state.stabilization_k;
    const std::size_t kbar = *bar.stabilization_k;
    out.expect(oracle::linearization_bound_holds(k, kbar, pencil.degree),
               "bound (family " + std::to_string(f) + "): k=" + std::to_string(k) + " kbar=" + std::to_string(kbar) +
                   " n=" + std::to_string(pencil.degree));
    if (f == 0) out.expect(k == 3 && kbar == 1 && pencil.degree == 3, "example 1: k = 3, n = 3, kbar = 1");
    ++bounds;
  }

  std::size_t pencils = 0;
  for (int attempt = 0; attempt < 400 && pencils < 60; ++attempt) {
    const Index n = gen.uniform(2, 4);
    const Series p = attempt % 4 == 0 ? poly({gen.dense(n, n), gen.dense(n, n)}) : gen.pencil(n);
    if (oracle::determinant_polynomial(p) == std::vector<Rat>(oracle::determinant_polynomial(p).size(), Rat(0)))
      continue;
    const DiagonalizationResult r = diagonalize(p, opts);
    if (r.k > 1) continue;
    const Laurent resolvent = generalized_inverse(r, 10);
    const auto rc = oracle::resolvent_recurrence_check(p.coefficient(0), p.coefficient(1), resolvent, 10);
    out.expect(rc.passed && rc.checked_through == 10, "resolvent recurrences (pencil " + std::to_string(pencils) + ")");
    ++pencils;
  }
  out.expect(bounds >= 50, "at least 50 linearization families");
  out.expect(pencils >= 50, "at least 50 pencils with pole order <= 1");
  out.notes << bounds << " linearizations, " << pencils << " pencils";
}

void smith(Outcome& out, const std::vector<DiagonalizationResult>& results) {
  const DiagonalizationResult ex1 = diagonalize(fixtures::example1(), property_options());
  out.expect(smith_factorize(ex1).exponents == std::vector<std::size_t>{0, 1, 3}, "example 1 exponents {0, 1, 3}");
  out.expect(check_smith(ex1).passed, "example 1 Smith identities");
  for (std::size_t f = 0; f < results.size(); ++f) {
    const Check c = check_smith(results[f]);
    out.expect(c.passed, "Smith (family " + std::to_string(f) + "): " + c.detail);
  }
  out.notes << results.size() + 1 << " families";
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "example 1 golden run", example1, 1.0);
  ok &= report(2, "trivial families", trivial, 0.2);

  // Criterion 3 times the diagonalizations together with its checks.
  std::vector<DiagonalizationResult> results;
  ok &= report(3, "random family properties through order 12", [&](Outcome& out) {
    for (const Series& s : property_families()) results.push_back(diagonalize(s, property_options()));
    properties(out, results);
  }, 120.0);
  ok &= report(4, "oracle equivalence and Toeplitz nullities", [&](Outcome& out) { oracle_equivalence(out, results); },
               120.0);
  ok &= report(5, "linearization bound and resolvent recurrences", companions, 120.0);
  ok &= report(6, "Smith factorization", [&](Outcome& out) { smith(out, results); }, 60.0);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}

#include "opdiag/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "opdiag/checks.hpp"
#include "opdiag/oracles.hpp"

namespace opdiag {

namespace {

Json coefficient_list(long first_power, const std::vector<Matrix>& coeffs) {
  Json out = Json::array();
  long power = first_power;
  for (const auto& c : coeffs) out.push_back({{"power", power++}, {"matrix", matrix_to_json(c)}});
  return out;
}

Json terms_to_json(const std::vector<DeltaTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back({{"power", static_cast<long>(t.power)}, {"matrix", matrix_to_json(t.coefficient)}});
  return out;
}

Json space_to_json(const Space& s) { return {{"dim", s.dim()}, {"basis", matrix_to_json(s.basis)}}; }

Json stage_table(const Decomposition& d) {
  Json out = Json::array();
  for (std::size_t i = 1; i <= d.size(); ++i) {
    const Stage& st = d[i];
    out.push_back({{"stage", static_cast<long>(i)},
                   {"dim_kernel_complement", st.kernel_complement.dim()},
                   {"dim_range", st.range.dim()},
                   {"kernel_complement", space_to_json(st.kernel_complement)},
                   {"kernel", space_to_json(st.kernel)},
                   {"range", space_to_json(st.range)},
                   {"range_complement", space_to_json(st.range_complement)}});
  }
  return out;
}

Json header(const std::string& command, const FamilySpec& spec, const CommandOptions& options) {
  Json h;
  h["command"] = command;
  h["family"] = {{"rows", spec.rows},
                 {"cols", spec.cols},
                 {"kind", spec.kind == FamilyKind::Polynomial ? "polynomial" : "truncated_series"},
                 {"order", spec.order},
                 {"pole", spec.pole}};
  h["complement_strategy"] = options.given_complements ? "given" : "pivot";
  if (spec.pole > 0)
    h["normalization"] = "analyzed eps^" + std::to_string(spec.pole) + " * M(eps); inverse pole orders are folded back";
  if (spec.kind == FamilyKind::TruncatedSeries)
    h["caveat"] = "input is a truncated series; results hold modulo the truncation order " + std::to_string(spec.order);
  return h;
}

DiagonalizationResult run_diagonalize(const Series& l, const CommandOptions& options) {
  DiagonalizeOptions d;
  d.order = options.order;
  d.max_stages = options.max_stages;
  d.complements = options.complements;
  return diagonalize(l, d);
}

RecursionState run_analysis(const Series& l, const CommandOptions& options) {
  return run_until_stable(start_recursion(l, options.complements), options.max_stages);
}

Json check_json(const Check& c) { return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}; }

Check linearization_check(const Series& l, std::size_t k, const CommandOptions& options, Json* details) {
  const oracle::AugmentedPencil pencil = oracle::linearize_polynomial(l);
  const RecursionState bar = run_until_stable(start_recursion(pencil.pencil()), options.max_stages ? options.max_stages : 0);
  const std::size_t kbar = *bar.stabilization_k;
  const bool bound = oracle::linearization_bound_holds(k, kbar, pencil.degree);
  long nullity = 0;
  long nullity_bar = 0;
  if (k > 0) nullity = static_cast<long>(oracle::toeplitz_nullspace(l, k).dim());
  if (kbar > 0) nullity_bar = static_cast<long>(oracle::toeplitz_nullspace(pencil.pencil(), kbar).dim());
  if (details) {
    (*details)["degree"] = static_cast<long>(pencil.degree);
    (*details)["k"] = static_cast<long>(k);
    (*details)["kbar"] = static_cast<long>(kbar);
    (*details)["bound_holds"] = bound;
    (*details)["chain_space_dim"] = nullity;
    (*details)["pencil_chain_space_dim"] = nullity_bar;
    (*details)["lbar0"] = matrix_to_json(pencil.lbar0);
    (*details)["lbar1"] = matrix_to_json(pencil.lbar1);
  }
  const std::string detail = "n = " + std::to_string(pencil.degree) + ", k = " + std::to_string(k) +
                             ", kbar = " + std::to_string(kbar) + ", dim N[Delta^k] = " + std::to_string(nullity) +
                             ", dim N[Delta_bar^kbar] = " + std::to_string(nullity_bar);
  return {"linearization_bound", bound && nullity == nullity_bar, detail};
}

}  // namespace

Json series_to_json(const Series& s, long shift) {
  return {{"type", "series"},
          {"order", s.trunc_order() + shift},
          {"exact", s.is_polynomial()},
          {"coefficients", coefficient_list(shift, s.coeffs())}};
}

Json laurent_to_json(const Laurent& l, long shift) {
  return {{"type", "laurent"},
          {"pole", l.pole_order() - shift},
          {"order", l.trunc_order() + shift},
          {"exact", l.tail() == Tail::Exact},
          {"coefficients", coefficient_list(-l.pole_order() + shift, l.coeffs())}};
}

Json run_command(const std::string& command, const FamilySpec& spec, const CommandOptions& options) {
  Json r = header(command, spec, options);
  const Series l = spec.analytic_series();

  if (command == "analyze") {
    const RecursionState state = run_analysis(l, options);
    r["generic_rank"] = static_cast<long>(state.generic_rank);
    r["k"] = static_cast<long>(*state.stabilization_k);
    r["stages"] = stage_table(state.ledger);
    return r;
  }

  if (command == "linearize") {
    const RecursionState state = run_analysis(l, options);
    Json details;
    const Check c = linearization_check(l, *state.stabilization_k, options, &details);
    for (auto& [key, value] : details.items()) r[key] = value;
    r["check"] = check_json(c);
    return r;
  }

  if (command == "jordan") {
    if (options.jordan_length == 0) fail(ErrorKind::Input, "jordan: --length must be >= 1");
    RecursionState state = run_analysis(l, options);
    state = extend_to(std::move(state), options.jordan_length);
    const JordanChainBasis basis = jordan_chain_basis(state, options.jordan_length);
    const long nullity = static_cast<long>(oracle::toeplitz_nullspace(l, options.jordan_length).dim());
    r["k"] = static_cast<long>(*state.stabilization_k);
    r["length"] = static_cast<long>(options.jordan_length);
    r["chain_space_dim"] = static_cast<long>(rank<Rat>(basis.generator));
    r["toeplitz_nullity"] = nullity;
    Json chains = Json::array();
    const Index n = state.domain_dim();
    for (Index c = 0; c < basis.generator.cols(); ++c) {
      Json vectors = Json::array();
      Vector root;
      for (std::size_t b = 0; b < options.jordan_length; ++b) {
        const Vector v = basis.generator.col(c).segment(static_cast<Index>(b) * n, n);
        vectors.push_back(matrix_to_json(Matrix(v.transpose())).front());
        root = v;
      }
      Json chain{{"vectors", std::move(vectors)}};
      if (is_zero(root)) {
        chain["root_rank"] = nullptr;
      } else if (const auto rk = rank_of_root(state, root)) {
        chain["root_rank"] = static_cast<long>(*rk);
      } else {
        chain["root_rank"] = "infinite";
      }
      chains.push_back(std::move(chain));
    }
    r["chains"] = std::move(chains);
    return r;
  }

  const DiagonalizationResult result = run_diagonalize(l, options);
  r["generic_rank"] = static_cast<long>(result.state.generic_rank);
  r["k"] = static_cast<long>(result.k);
  r["order"] = result.order;

  if (command == "diagonalize") {
    r["stages"] = stage_table(result.decomposition);
    r["delta"] = terms_to_json(result.delta_terms);
    r["delta_polynomial"] = series_to_json(delta_series(result.delta_terms, l.rows(), l.cols()));
    r["phi"] = series_to_json(result.phi);
    r["psi"] = series_to_json(result.psi);
    r["residual"] = {{"exact_zero", result.residual.ok}, {"checked_through", result.residual.checked_through}};
    return r;
  }
  if (command == "invert") {
    const Laurent inv = generalized_inverse(result, result.order);
    r["pole_order"] = inv.pole_order() - spec.pole;
    r["inverse"] = laurent_to_json(inv, spec.pole);
    return r;
  }
  if (command == "smith") {
    const SmithFactorization f = smith_factorize(result);
    Json exps = Json::array();
    for (auto e : f.exponents) exps.push_back(static_cast<long>(e));
    r["exponents"] = std::move(exps);
    r["s_p"] = matrix_to_json(f.s_p);
    r["p"] = terms_to_json(f.p_terms);
    r["a"] = series_to_json(f.a_series);
    return r;
  }
  if (command == "verify") {
    CheckReport report = verify_all(result);
    std::vector<long> nullities;
    check_jordan_chains(result, &nullities);
    r["toeplitz_nullities"] = nullities;
    if (l.is_polynomial() && l.trunc_order() >= 1) {
      try {
        report.checks.push_back(linearization_check(l, result.k, options, nullptr));
      } catch (const Error& e) {
        report.checks.push_back({"linearization_bound", false, std::string("error: ") + e.what()});
      }
    }
    const bool pencil = l.is_polynomial() && l.trunc_order() <= 1 && l.rows() == l.cols() &&
                        result.state.generic_rank == static_cast<std::size_t>(l.rows());
    if (pencil) {
      const Laurent resolvent = oracle::direct_laurent_inverse(l, l.rows(), result.order);
      if (resolvent.pole_order() <= 1) {
        const auto rc = oracle::resolvent_recurrence_check(l.coefficient(0), l.coefficient(1), resolvent, result.order);
        std::string detail = "checked through j = " + std::to_string(rc.checked_through);
        if (rc.first_violation) detail += ", first violation at " + std::to_string(*rc.first_violation);
        report.checks.push_back({"resolvent_recurrences", rc.passed, detail});
      }
    }
    Json checks = Json::array();
    for (const auto& c : report.checks) checks.push_back(check_json(c));
    r["checks"] = std::move(checks);
    r["all_passed"] = report.all_passed();
    return r;
  }
  fail(ErrorKind::Input, "unknown command \"" + command + "\"");
}

int report_exit_code(const Json& report) {
  if (report.contains("all_passed") && !report["all_passed"].get<bool>()) return 3;
  return 0;
}

namespace {

std::string eps_power(long p) {
  if (p == 1) return "eps";
  return "eps^" + std::to_string(p);
}

/// "c0 + c1*eps + ..." for one entry; `tail` appends the O() term.
std::string entry_polynomial(const std::vector<std::pair<long, std::string>>& terms, std::optional<long> tail) {
  std::string out;
  for (const auto& [power, value] : terms) {
    if (value == "0") continue;
    const bool negative = value.front() == '-';
    const std::string mag = negative ? value.substr(1) : value;
    std::string term;
    if (power == 0)
      term = mag;
    else
      term = (mag == "1" ? "" : mag + "*") + eps_power(power);
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  if (tail) return (out.empty() ? "" : out + " + ") + "O(" + eps_power(*tail) + ")";
  if (out.empty()) out = "0";
  return out;
}

void grid_lines(const std::vector<std::vector<std::string>>& cells, const std::string& indent, std::ostream& os) {
  if (cells.empty() || cells.front().empty()) {
    os << indent << "(empty)\n";
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (width.size() <= j) width.push_back(0);
      width[j] = std::max(width[j], row[j].size());
    }
  for (const auto& row : cells) {
    os << indent << "[ ";
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << row[j] << std::string(width[j] - row[j].size(), ' ');
      os << (j + 1 < row.size() ? "  " : "");
    }
    os << " ]\n";
  }
}

bool is_grid(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& row) {
    return row.is_array() && std::all_of(row.begin(), row.end(), [](const Json& e) { return e.is_string(); });
  });
}

std::vector<std::vector<std::string>> grid_cells(const Json& j) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) {
    out.emplace_back();
    for (const auto& e : row) out.back().push_back(e.get<std::string>());
  }
  return out;
}

void render_expansion(const Json& s, const std::string& indent, std::ostream& os) {
  const auto& coeffs = s["coefficients"];
  if (coeffs.empty()) return;
  const auto first = grid_cells(coeffs.front()["matrix"]);
  const std::size_t rows = first.size();
  const std::size_t cols = rows ? first.front().size() : 0;
  std::optional<long> tail;
  if (!s["exact"].get<bool>()) tail = s["order"].get<long>() + 1;
  std::vector<std::vector<std::vector<std::pair<long, std::string>>>> terms(
      rows, std::vector<std::vector<std::pair<long, std::string>>>(cols));
  for (const auto& c : coeffs) {
    const long power = c["power"].get<long>();
    const auto cells = grid_cells(c["matrix"]);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) terms[i][j].emplace_back(power, cells[i][j]);
  }
  std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) cells[i][j] = entry_polynomial(terms[i][j], tail);
  if (s["type"] == "laurent") os << indent << "pole order " << s["pole"].get<long>() << "\n";
  grid_lines(cells, indent, os);
}

void render(const Json& j, const std::string& indent, std::ostream& os);

void render_value(const std::string& key, const Json& v, const std::string& indent, std::ostream& os) {
  if (v.is_object() && v.contains("type") && (v["type"] == "series" || v["type"] == "laurent")) {
    os << indent << key << ":\n";
    render_expansion(v, indent + "  ", os);
  } else if (is_grid(v)) {
    os << indent << key << ":\n";
    grid_lines(grid_cells(v), indent + "  ", os);
  } else if (v.is_object()) {
    os << indent << key << ":\n";
    render(v, indent + "  ", os);
  } else if (v.is_array() && !v.empty() && v.front().is_object()) {
    os << indent << key << ":\n";
    for (const auto& item : v) {
      os << indent << "  -\n";
      render(item, indent + "    ", os);
    }
  } else if (v.is_string()) {
    os << indent << key << ": " << v.get<std::string>() << "\n";
  } else {
    os << indent << key << ": " << v.dump() << "\n";
  }
}

void render(const Json& j, const std::string& indent, std::ostream& os) {
  for (const auto& [key, value] : j.items()) render_value(key, value, indent, os);
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(report, "", os);
  return os.str();
}

}  // namespace opdiag

#include "opdiag/family_io.hpp"

#include <set>
#include <vector>

namespace opdiag {

namespace {

[[noreturn]] void bad(const std::string& msg, ErrorContext ctx = {}) { fail(ErrorKind::Input, msg, std::move(ctx)); }

Rat entry_from_json(const Json& e, const std::string& what) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return Rat(e.get<long long>());
  bad(what + ": entries must be rational strings or integers");
}

long power_from_key(const std::string& key) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size() || std::to_string(value) != key) bad("coefficient power \"" + key + "\" is not an integer");
  return value;
}

long integer_field(const Json& j, const char* key, long min) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  const long value = v.get<long>();
  if (value < min) bad(std::string("field \"") + key + "\" must be >= " + std::to_string(min));
  return value;
}

}  // namespace

Json parse_json_strict(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  std::string duplicate;
  const Json::parser_callback_t cb = [&](int, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case Json::parse_event_t::key:
        if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty())
          duplicate = parsed.get<std::string>();
        break;
      default:
        break;
    }
    return true;
  };
  Json out;
  try {
    out = Json::parse(text.begin(), text.end(), cb);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!duplicate.empty()) bad("duplicate key \"" + duplicate + "\"");
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& grid, Index rows, Index cols, const std::string& what) {
  if (!grid.is_array()) bad(what + ": expected an array of rows");
  // An empty array stands for a rows x 0 matrix.
  if (grid.empty() && cols <= 0) return Matrix(rows, 0);
  if (static_cast<Index>(grid.size()) != rows)
    bad(what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(grid.size()),
        {{}, what, static_cast<long>(grid.size()), -1});
  Index width = cols;
  if (width < 0) width = grid.front().is_array() ? static_cast<Index>(grid.front().size()) : 0;
  Matrix m(rows, width);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = grid[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != width)
      bad(what + ": row " + std::to_string(i) + " does not have " + std::to_string(width) + " entries",
          {{}, what, rows, width});
    for (Index j = 0; j < width; ++j) m(i, j) = entry_from_json(row[static_cast<std::size_t>(j)], what);
  }
  return m;
}

FamilySpec family_from_json(const Json& j) {
  if (!j.is_object()) bad("family: expected a JSON object");
  static const std::set<std::string> known{"rows", "cols", "kind", "order", "pole", "coefficients"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) bad("family: unknown field \"" + key + "\"");
  for (const char* key : {"rows", "cols", "kind", "order", "coefficients"})
    if (!j.contains(key)) bad(std::string("family: missing field \"") + key + "\"");

  FamilySpec spec;
  spec.rows = integer_field(j, "rows", 1);
  spec.cols = integer_field(j, "cols", 1);
  spec.order = integer_field(j, "order", 0);
  spec.pole = j.contains("pole") ? integer_field(j, "pole", 0) : 0;
  const auto& kind = j.at("kind");
  if (kind == "polynomial")
    spec.kind = FamilyKind::Polynomial;
  else if (kind == "truncated_series")
    spec.kind = FamilyKind::TruncatedSeries;
  else
    bad("family: kind must be \"polynomial\" or \"truncated_series\"");

  const auto& coeffs = j.at("coefficients");
  if (!coeffs.is_object()) bad("family: coefficients must be an object keyed by power");
  for (const auto& [key, grid] : coeffs.items()) {
    const long power = power_from_key(key);
    if (power < 0 && spec.pole == 0) bad("negative power " + key + " without a declared pole");
    if (power < -spec.pole) bad("power " + key + " lies below the declared pole " + std::to_string(spec.pole));
    if (power > spec.order) bad("power " + key + " exceeds the declared order " + std::to_string(spec.order));
    spec.coefficients.emplace(power, matrix_from_json(grid, spec.rows, spec.cols, "L_" + key));
  }
  return spec;
}

FamilySpec parse_family(std::string_view text) { return family_from_json(parse_json_strict(text)); }

Json family_to_json(const FamilySpec& spec) {
  Json j;
  j["rows"] = spec.rows;
  j["cols"] = spec.cols;
  j["kind"] = spec.kind == FamilyKind::Polynomial ? "polynomial" : "truncated_series";
  j["order"] = spec.order;
  j["pole"] = spec.pole;
  Json coeffs = Json::object();
  for (const auto& [power, m] : spec.coefficients) coeffs[std::to_string(power)] = matrix_to_json(m);
  j["coefficients"] = std::move(coeffs);
  return j;
}

std::string serialize_family(const FamilySpec& spec) { return family_to_json(spec).dump(2) + "\n"; }

Series FamilySpec::analytic_series() const {
  std::vector<Matrix> out(static_cast<std::size_t>(order + pole + 1), Matrix::Zero(rows, cols));
  for (const auto& [power, m] : coefficients) out[static_cast<std::size_t>(power + pole)] = m;
  return Series(rows, cols, std::move(out), kind == FamilyKind::Polynomial ? Tail::Exact : Tail::Truncated);
}

FamilySpec family_from_series(const Series& s) {
  FamilySpec spec;
  spec.rows = s.rows();
  spec.cols = s.cols();
  spec.kind = s.is_polynomial() ? FamilyKind::Polynomial : FamilyKind::TruncatedSeries;
  spec.order = s.trunc_order();
  for (long i = 0; i <= s.trunc_order(); ++i)
    if (!is_zero(s.coefficient(i))) spec.coefficients.emplace(i, s.coefficient(i));
  return spec;
}

ComplementPlan parse_complements(std::string_view text, Index domain_dim, Index codomain_dim) {
  const Json j = parse_json_strict(text);
  if (!j.is_object()) bad("complements: expected a JSON object");
  ComplementPlan plan;
  for (const auto& [key, value] : j.items()) {
    const bool kernel = key == "kernel_complements";
    if (!kernel && key != "range_complements") bad("complements: unknown field \"" + key + "\"");
    if (!value.is_object()) bad("complements: \"" + key + "\" must be an object keyed by stage");
    for (const auto& [stage_key, grid] : value.items()) {
      const long stage = power_from_key(stage_key);
      if (stage < 1) bad("complements: stages are numbered from 1");
      const Index ambient = kernel ? domain_dim : codomain_dim;
      Matrix basis = matrix_from_json(grid, ambient, -1, key + "[" + stage_key + "]");
      (kernel ? plan.kernel_complements : plan.range_complements).emplace(static_cast<std::size_t>(stage), std::move(basis));
    }
  }
  return plan;
}

}  // namespace opdiag

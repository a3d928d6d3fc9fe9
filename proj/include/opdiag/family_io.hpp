#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "opdiag/recursion.hpp"

namespace opdiag {

using Json = nlohmann::ordered_json;

enum class FamilyKind { Polynomial, TruncatedSeries };

/// A family as read from JSON:
///   {"rows": m, "cols": n, "kind": "polynomial" | "truncated_series",
///    "order": T, "pole": p, "coefficients": {"<power>": [[entry, ...], ...], ...}}
/// Entries are strings "num/den" or "int" (JSON integers are accepted too).
/// Powers run over -p..T; powers that are not listed are zero.
struct FamilySpec {
  Index rows = 0;
  Index cols = 0;
  FamilyKind kind = FamilyKind::Polynomial;
  long order = 0;  // degree bound of a polynomial, or the truncation order
  long pole = 0;   // declared pole p: the family is eps^{-p} times an analytic one
  std::map<long, Matrix> coefficients;

  /// eps^p M(eps) as a series: power q is stored at index q + p.
  Series analytic_series() const;
};

FamilySpec parse_family(std::string_view text);
FamilySpec family_from_json(const Json& j);
Json family_to_json(const FamilySpec& spec);
/// Canonical text: fixed key order, ascending powers, canonical rationals.
std::string serialize_family(const FamilySpec& spec);

FamilySpec family_from_series(const Series& s);

/// Parses a JSON document while rejecting duplicate keys in any object.
Json parse_json_strict(std::string_view text);

/// {"kernel_complements": {"<stage>": grid}, "range_complements": {...}} where
/// each grid lists the basis vectors as columns (rows = ambient dimension).
ComplementPlan parse_complements(std::string_view text, Index domain_dim, Index codomain_dim);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& grid, Index rows, Index cols, const std::string& what);

}  // namespace opdiag

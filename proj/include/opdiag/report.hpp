#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "opdiag/family_io.hpp"

namespace opdiag {

struct CommandOptions {
  std::optional<long> order;
  std::size_t max_stages = 0;
  ComplementPlan complements;
  bool given_complements = false;
  std::size_t jordan_length = 0;
};

/// Commands: analyze, diagonalize, invert, jordan, smith, linearize, verify.
Json run_command(const std::string& command, const FamilySpec& spec, const CommandOptions& options = {});

/// Exit status implied by a successful report: 3 when a verify check failed.
int report_exit_code(const Json& report);

/// Human-readable rendering; series are printed as matrices of polynomials in eps.
std::string render_text(const Json& report);

Json series_to_json(const Series& s, long shift = 0);
Json laurent_to_json(const Laurent& l, long shift = 0);

}  // namespace opdiag

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace opdiag {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator, so equality is structural.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Parses "int" or "num/den" (optional leading sign on num, decimal digits
/// only). Throws Error(Input) on anything else, including a zero denominator.
Rat parse_rational(std::string_view text);

/// Canonical text form: "num/den", or "num" when the denominator is 1.
std::string to_string(const Rat& value);

}  // namespace opdiag

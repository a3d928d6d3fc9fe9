#include "opdiag/rational.hpp"

#include <algorithm>
#include <cctype>

#include "opdiag/errors.hpp"

namespace opdiag {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

[[noreturn]] void malformed(std::string_view text, const char* why) {
  fail(ErrorKind::Input, "malformed rational \"" + std::string(text) + "\": " + why);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) malformed(text, "numerator is not an integer");
  if (!all_digits(den)) malformed(text, "denominator is not a positive integer");

  // Leading zeros would otherwise select octal in the GMP string parser.
  const auto decimal = [](std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  BigInt n = decimal(digits);
  if (num.front() == '-') n = -n;
  const BigInt d = decimal(den);
  if (d == 0) malformed(text, "zero denominator");
  return Rat(n, d);
}

std::string to_string(const Rat& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace opdiag

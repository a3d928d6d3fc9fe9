#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace opdiag {

enum class ErrorKind {
  Input,            // malformed input, shape mismatch, precondition violated by the caller
  Truncation,       // not enough series coefficients for the requested order
  NoStabilization,  // stage budget or truncation exhausted before a stabilization certificate
  Internal,         // an exact identity failed; always a bug
};

/// Where an error happened: the recursion stage (1-based) if any, and the
/// object whose shape was involved.
struct ErrorContext {
  std::optional<std::size_t> stage;
  std::string object;
  long rows = -1;
  long cols = -1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, ErrorContext context = {})
      : std::runtime_error(format(message, context)), kind_(kind), context_(std::move(context)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const ErrorContext& context() const noexcept { return context_; }

 private:
  static std::string format(const std::string& message, const ErrorContext& context) {
    std::string out = message;
    if (context.stage) out += " [stage " + std::to_string(*context.stage) + "]";
    if (!context.object.empty()) {
      out += " [" + context.object;
      if (context.rows >= 0) out += " " + std::to_string(context.rows) + "x" + std::to_string(context.cols);
      out += "]";
    }
    return out;
  }

  ErrorKind kind_;
  ErrorContext context_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, ErrorContext context = {}) {
  throw Error(kind, message, std::move(context));
}

/// Process exit code for an error kind: 1 input, 2 no stabilization, 3 internal.
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Truncation:
      return 1;
    case ErrorKind::NoStabilization:
      return 2;
    case ErrorKind::Internal:
      return 3;
  }
  return 3;
}

}  // namespace opdiag

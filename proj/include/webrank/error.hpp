#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace webrank {

enum class ErrorKind {
  Validation,
  Syntax,
  NotAWeb,
  Regularity,
  Singularity,
  NotClosed,
  DegenerateBasepoint,
  NoValidBasepoint,
  AdjointPole,
  Domain,
  NumericalInstability,
  TheoremViolation,
  Internal,
};

/// Short machine-parsable slug, e.g. "not-a-web".
std::string_view error_slug(ErrorKind kind);

/// Process exit code associated with an error kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace webrank

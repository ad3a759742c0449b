#include "webrank/error.hpp"

namespace webrank {

std::string_view error_slug(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::NotAWeb: return "not-a-web";
    case ErrorKind::Regularity: return "regularity";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::NotClosed: return "not-closed";
    case ErrorKind::DegenerateBasepoint: return "degenerate-basepoint";
    case ErrorKind::NoValidBasepoint: return "no-valid-basepoint";
    case ErrorKind::AdjointPole: return "adjoint-pole";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NumericalInstability: return "numerical-instability";
    case ErrorKind::TheoremViolation: return "theorem-violation";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalInstability: return 2;
    case ErrorKind::TheoremViolation: return 3;
    case ErrorKind::Internal: return 4;
    default: return 1;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_slug(kind)) + ": " + message),
      kind_(kind),
      message_(message) {}

}  // namespace webrank

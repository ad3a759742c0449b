#pragma once

#include <string_view>

#include "webrank/polynomial.hpp"

namespace webrank {

/// Parses a polynomial expression over the rationals.
///
///   expr     := ['+'|'-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := 'x' | 'y' | rational | '(' expr ')'
///   rational := int ('/' uint)?
///
/// Whitespace is insignificant. With `allow_z` the variable 'z' is accepted as
/// well (curve display). Errors are Syntax errors carrying the byte offset.
Polynomial parse_expression(std::string_view text, bool allow_z = false);

}  // namespace webrank

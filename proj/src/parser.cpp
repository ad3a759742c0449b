#include "webrank/parser.hpp"

#include <cctype>
#include <string>

#include "webrank/error.hpp"

namespace webrank {
namespace {

class Parser {
 public:
  Parser(std::string_view text, bool allow_z) : text_(text), allow_z_(allow_z) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) error(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Syntax, what + " at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/')
          error("division is only allowed inside rational literals");
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      std::string digits = read_digits();
      if (digits.empty()) error("expected a non-negative integer exponent");
      if (digits.size() > 4) error("exponent too large");
      b = b.pow(std::stoi(digits));
    }
    return b;
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'x' || c == 'y' || (c == 'z' && allow_z_)) {
      ++pos_;
      return Polynomial::variable(c == 'x' ? 0 : (c == 'y' ? 1 : 2));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      Integer n(num);
      Integer d(1);
      skip_ws();
      // A '/' directly after an integer literal forms a rational literal.
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::string den = read_digits();
        if (den.empty()) error("expected denominator");
        d = Integer(den);
        if (d == 0) error("zero denominator");
      }
      return Polynomial::constant(Rational(n, d));
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) error(std::string("unknown symbol '") + c + "'");
    error(std::string("unexpected '") + c + "'");
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  bool allow_z_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, bool allow_z) {
  return Parser(text, allow_z).parse();
}

}  // namespace webrank

#include "webrank/field.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "webrank/error.hpp"

namespace webrank {

void CoefficientField::validate() const {
  if (mode == FieldMode::BigFloat) {
    if (precision_bits < 128)
      fail(ErrorKind::Validation, "big-float precision must be at least 128 bits");
    if (!(rank_gap_tolerance > 0))
      fail(ErrorKind::Validation, "rank_gap_tolerance must be strictly positive");
  }
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) start = 1;
    if (start >= t.size()) return false;
    for (std::size_t i = start; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  trim(num);
  trim(den);
  if (!valid_int(num, true) || !valid_int(den, false))
    fail(ErrorKind::Validation, "malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) fail(ErrorKind::Validation, "zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(num), d);
}

std::string render_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string render_float(const BigFloat& v, int digits) {
  if (v == 0) return "0";
  return v.str(digits, std::ios_base::scientific);
}

double& FieldTraits<BigFloat>::tolerance() {
  thread_local double tol = 1e-30;
  return tol;
}

namespace {
unsigned& active_bits() {
  thread_local unsigned bits = 256;
  return bits;
}

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
}  // namespace

unsigned current_precision_bits() { return active_bits(); }

PrecisionScope::PrecisionScope(const CoefficientField& field)
    : PrecisionScope(field.precision_bits, field.rank_gap_tolerance) {}

PrecisionScope::PrecisionScope(unsigned bits, double tolerance)
    : saved_digits_(BigFloat::default_precision()),
      saved_bits_(active_bits()),
      saved_tolerance_(FieldTraits<BigFloat>::tolerance()) {
  if (BigFloat::default_precision() != digits_for_bits(bits)) BigFloat::default_precision(digits_for_bits(bits));
  active_bits() = bits;
  FieldTraits<BigFloat>::tolerance() = tolerance;
}

PrecisionScope::~PrecisionScope() {
  if (BigFloat::default_precision() != saved_digits_) BigFloat::default_precision(saved_digits_);
  active_bits() = saved_bits_;
  FieldTraits<BigFloat>::tolerance() = saved_tolerance_;
}

}  // namespace webrank

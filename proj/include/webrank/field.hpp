#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace webrank {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

enum class FieldMode { ExactRational, BigFloat };

/// Coefficient field settings. Exact mode never rounds; big-float mode runs
/// at `precision_bits` and treats magnitudes below `rank_gap_tolerance` as zero.
struct CoefficientField {
  FieldMode mode = FieldMode::ExactRational;
  unsigned precision_bits = 256;
  double rank_gap_tolerance = 1e-30;

  void validate() const;
  bool exact() const { return mode == FieldMode::ExactRational; }
  bool operator==(const CoefficientField&) const = default;
};

/// Smallest accepted ratio between the last kept and first dropped singular value.
inline constexpr double kMinGapRatio = 1e6;

Rational parse_rational(std::string_view text);
/// Canonical "p/q" rendering, "p" when the denominator is 1.
std::string render_rational(const Rational& q);
std::string render_float(const BigFloat& v, int digits = 30);

/// Precision of the innermost active PrecisionScope (256 when none is active).
unsigned current_precision_bits();

/// Sets the working MPFR precision and zero tolerance for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(const CoefficientField& field);
  PrecisionScope(unsigned bits, double tolerance);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
  unsigned saved_bits_;
  double saved_tolerance_;
};

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static std::string render(const Rational& v) { return render_rational(v); }
};

template <>
struct FieldTraits<BigFloat> {
  static constexpr bool exact = false;
  /// Absolute zero threshold for residuals and unit tests.
  static double& tolerance();
  static bool is_zero(const BigFloat& v) { return abs(v) <= BigFloat(tolerance()); }
  static BigFloat from_rational(const Rational& q) {
    return BigFloat(numerator(q)) / BigFloat(denominator(q));
  }
  static double to_double(const BigFloat& v) { return v.convert_to<double>(); }
  static std::string render(const BigFloat& v) { return render_float(v); }
};

template <class F>
F from_rational(const Rational& q) {
  return FieldTraits<F>::from_rational(q);
}

template <class F>
bool is_zero(const F& v) {
  return FieldTraits<F>::is_zero(v);
}

/// Calls `fn.template operator()<F>()` with F chosen by the field mode.
template <class Fn>
decltype(auto) with_field(const CoefficientField& field, Fn&& fn) {
  field.validate();
  if (field.exact()) return fn.template operator()<Rational>();
  PrecisionScope scope(field);
  return fn.template operator()<BigFloat>();
}

}  // namespace webrank

#pragma once

#include <array>
#include <map>
#include <string>

#include "webrank/field.hpp"
#include "webrank/series.hpp"

namespace webrank {

/// Sparse polynomial over the rationals in up to three variables x, y, z.
class Polynomial {
 public:
  using Exponent = std::array<int, 3>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  /// Variable 0, 1 or 2 (x, y, z).
  static Polynomial variable(int which);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  bool uses(int var) const { return degree_in(var) > 0; }
  Rational coeff(const Exponent& e) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(int n) const;
  Polynomial derivative(int var) const;
  Rational evaluate(const Rational& x, const Rational& y, const Rational& z = Rational(1)) const;
  /// Substitutes z = 1.
  Polynomial dehomogenized() const;
  /// Swaps two variables.
  Polynomial swapped(int v1, int v2) const;

  /// Taylor expansion in local coordinates (x - x0, y - y0) truncated at `order`; z is set to 1.
  template <class F>
  Series<F> recentered(const Rational& x0, const Rational& y0, int order, Variables vars = {}) const;

  /// Rendering in the input grammar, highest degree first.
  std::string str() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::map<Exponent, Rational> terms_;
};

Integer binomial(int n, int k);

}  // namespace webrank

#pragma once

#include <span>
#include <string>
#include <vector>

#include "webrank/error.hpp"
#include "webrank/field.hpp"
#include "webrank/univariate.hpp"

namespace webrank {

/// Ordered pair of local coordinate symbols, centered at the basepoint.
struct Variables {
  std::string first = "x";
  std::string second = "y";
  friend bool operator==(const Variables&, const Variables&) = default;
};

inline constexpr int triangular(int n) { return n * (n + 1) / 2; }
/// Number of monomials of total degree <= order.
inline constexpr int term_count(int order) { return triangular(order + 1); }
/// Dense index of x^i y^j in total-degree order.
inline constexpr int term_index(int i, int j) { return triangular(i + j) + j; }

/// Bivariate power series truncated at total degree `order`.
///
/// Every coefficient with i + j <= order is stored. Binary operations truncate
/// to the smaller operand order, so `order()` is always the valid jet order of
/// the value.
template <class F>
class Series {
 public:
  Series() = default;
  Series(int order, Variables vars);

  static Series constant(const F& c, int order, Variables vars = {});
  /// The coordinate function of variable 0 (first) or 1 (second).
  static Series variable(int which, int order, Variables vars = {});

  int order() const { return order_; }
  const Variables& variables() const { return vars_; }

  const F& operator()(int i, int j) const { return c_[static_cast<std::size_t>(term_index(i, j))]; }
  F& operator()(int i, int j) { return c_[static_cast<std::size_t>(term_index(i, j))]; }
  /// Coefficient of x^i y^j, zero beyond the truncation order.
  F coeff(int i, int j) const { return i + j <= order_ ? (*this)(i, j) : F(0); }
  const F& constant_term() const { return c_.front(); }
  std::span<const F> coefficients() const { return c_; }

  bool is_unit() const { return !webrank::is_zero(c_.front()); }
  /// True when every coefficient is zero (negligible in big-float mode).
  bool is_zero() const;
  F max_abs() const;

  Series truncated(int order) const;
  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(const F& s);

  /// Converts coefficient field (exact rationals to big floats).
  template <class G>
  Series<G> cast() const {
    Series<G> r(order_, vars_);
    for (int n = 0; n <= order_; ++n)
      for (int j = 0; j <= n; ++j) r(n - j, j) = convert(c_[static_cast<std::size_t>(term_index(n - j, j))], G{});
    return r;
  }

 private:
  static Rational convert(const Rational& v, const Rational&) { return v; }
  static BigFloat convert(const Rational& v, const BigFloat&) { return from_rational<BigFloat>(v); }
  static BigFloat convert(const BigFloat& v, const BigFloat&) { return v; }

  int order_ = 0;
  Variables vars_;
  std::vector<F> c_{F(0)};
};

template <class F>
void require_same_variables(const Series<F>& a, const Series<F>& b);

template <class F> Series<F> operator+(const Series<F>& a, const Series<F>& b);
template <class F> Series<F> operator-(const Series<F>& a, const Series<F>& b);
template <class F> Series<F> operator-(const Series<F>& a);
template <class F> Series<F> operator*(const Series<F>& a, const Series<F>& b);
template <class F> Series<F> operator*(const F& s, const Series<F>& a);

enum class SeriesOp { Add, Sub, Mul };
/// Dispatching form of the ring operations.
template <class F>
Series<F> series_arith(const Series<F>& lhs, const Series<F>& rhs, SeriesOp op);
template <class F>
Series<F> scale(const Series<F>& s, const F& factor);

/// Multiplicative inverse of a unit, valid to the same order.
template <class F>
Series<F> invert_unit(const Series<F>& s);

/// Partial derivative by variable index (0 or 1); the order drops by one.
template <class F>
Series<F> differentiate(const Series<F>& s, int var);
/// Partial derivative by symbol name.
template <class F>
Series<F> differentiate(const Series<F>& s, const std::string& var);

/// h(u) for a univariate series h and u with u(0) = 0.
template <class F>
Series<F> compose(const UniPoly<F>& h, const Series<F>& u);

/// Integer power by repeated multiplication.
template <class F>
Series<F> power(const Series<F>& s, int n);

/// Polynomial in one indeterminate with series coefficients, low degree first.
template <class F>
using SeriesPolynomial = std::vector<Series<F>>;

template <class F>
Series<F> evaluate(const SeriesPolynomial<F>& poly, const Series<F>& t);

/// Power-series branches t(x, y) of poly(t) = 0 through each simple seed root.
template <class F>
std::vector<Series<F>> newton_algebraic_roots(const SeriesPolynomial<F>& poly, const std::vector<F>& seeds);

}  // namespace webrank

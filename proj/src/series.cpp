#include "webrank/series.hpp"

#include <algorithm>

namespace webrank {

template <class F>
Series<F>::Series(int order, Variables vars)
    : order_(order), vars_(std::move(vars)), c_(static_cast<std::size_t>(term_count(order)), F(0)) {
  if (order < 0) fail(ErrorKind::Internal, "negative series order");
}

template <class F>
Series<F> Series<F>::constant(const F& c, int order, Variables vars) {
  Series s(order, std::move(vars));
  s.c_[0] = c;
  return s;
}

template <class F>
Series<F> Series<F>::variable(int which, int order, Variables vars) {
  Series s(order, std::move(vars));
  if (order >= 1) {
    if (which == 0)
      s(1, 0) = F(1);
    else
      s(0, 1) = F(1);
  }
  return s;
}

template <class F>
bool Series<F>::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const F& v) { return webrank::is_zero(v); });
}

template <class F>
F Series<F>::max_abs() const {
  F m(0);
  for (const auto& v : c_) {
    F a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

template <class F>
Series<F> Series<F>::truncated(int order) const {
  if (order > order_) fail(ErrorKind::Internal, "cannot raise a series above its valid order");
  Series r(order, vars_);
  std::copy_n(c_.begin(), term_count(order), r.c_.begin());
  return r;
}

template <class F>
void require_same_variables(const Series<F>& a, const Series<F>& b) {
  if (!(a.variables() == b.variables()))
    fail(ErrorKind::Validation, "series variable mismatch: (" + a.variables().first + "," + a.variables().second +
                                    ") vs (" + b.variables().first + "," + b.variables().second + ")");
}

template <class F>
Series<F>& Series<F>::operator+=(const Series& rhs) {
  require_same_variables(*this, rhs);
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

template <class F>
Series<F>& Series<F>::operator-=(const Series& rhs) {
  require_same_variables(*this, rhs);
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

template <class F>
Series<F>& Series<F>::operator*=(const F& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

template <class F>
Series<F> operator+(const Series<F>& a, const Series<F>& b) {
  Series<F> r = a;
  r += b;
  return r;
}

template <class F>
Series<F> operator-(const Series<F>& a, const Series<F>& b) {
  Series<F> r = a;
  r -= b;
  return r;
}

template <class F>
Series<F> operator-(const Series<F>& a) {
  Series<F> r = a;
  r *= F(-1);
  return r;
}

template <class F>
Series<F> operator*(const Series<F>& a, const Series<F>& b) {
  require_same_variables(a, b);
  const int n = std::min(a.order(), b.order());
  Series<F> r(n, a.variables());
  for (int d1 = 0; d1 <= n; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const F& x = a(d1 - j1, j1);
      if (x == 0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2) {
        for (int j2 = 0; j2 <= d2; ++j2) {
          const F& y = b(d2 - j2, j2);
          if (y == 0) continue;
          r(d1 - j1 + d2 - j2, j1 + j2) += x * y;
        }
      }
    }
  }
  return r;
}

template <class F>
Series<F> operator*(const F& s, const Series<F>& a) {
  Series<F> r = a;
  r *= s;
  return r;
}

template <class F>
Series<F> series_arith(const Series<F>& lhs, const Series<F>& rhs, SeriesOp op) {
  switch (op) {
    case SeriesOp::Add: return lhs + rhs;
    case SeriesOp::Sub: return lhs - rhs;
    case SeriesOp::Mul: return lhs * rhs;
  }
  fail(ErrorKind::Internal, "unknown series operation");
}

template <class F>
Series<F> scale(const Series<F>& s, const F& factor) {
  return factor * s;
}

template <class F>
Series<F> invert_unit(const Series<F>& s) {
  if (!s.is_unit()) fail(ErrorKind::Singularity, "series is not a unit (automorphism not transverse here)");
  const int n = s.order();
  Series<F> r(n, s.variables());
  const F inv0 = F(1) / s(0, 0);
  r(0, 0) = inv0;
  // Solve s * r = 1 degree by degree.
  for (int d = 1; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      F acc(0);
      for (int i1 = 0; i1 <= i; ++i1) {
        for (int j1 = 0; j1 <= j; ++j1) {
          if (i1 == 0 && j1 == 0) continue;
          const F& x = s(i1, j1);
          if (x == 0) continue;
          acc += x * r(i - i1, j - j1);
        }
      }
      r(i, j) = -acc * inv0;
    }
  }
  return r;
}

template <class F>
Series<F> differentiate(const Series<F>& s, int var) {
  if (var != 0 && var != 1) fail(ErrorKind::Validation, "unknown differentiation variable index");
  const int n = std::max(s.order() - 1, 0);
  Series<F> r(n, s.variables());
  if (s.order() == 0) return r;
  for (int d = 0; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (var == 0)
        r(i, j) = s(i + 1, j) * F(i + 1);
      else
        r(i, j) = s(i, j + 1) * F(j + 1);
    }
  }
  return r;
}

template <class F>
Series<F> differentiate(const Series<F>& s, const std::string& var) {
  if (var == s.variables().first) return differentiate(s, 0);
  if (var == s.variables().second) return differentiate(s, 1);
  fail(ErrorKind::Validation, "unknown variable '" + var + "'");
}

template <class F>
Series<F> compose(const UniPoly<F>& h, const Series<F>& u) {
  if (!is_zero(u.constant_term()))
    fail(ErrorKind::Internal, "composition requires an inner series vanishing at the basepoint");
  const int n = u.order();
  Series<F> r(n, u.variables());
  const int top = std::min(h.size() - 1, n);
  for (int m = top; m >= 0; --m) {
    r = r * u;
    r(0, 0) += h[m];
  }
  return r;
}

template <class F>
Series<F> power(const Series<F>& s, int n) {
  Series<F> r = Series<F>::constant(F(1), s.order(), s.variables());
  for (int i = 0; i < n; ++i) r = r * s;
  return r;
}

template <class F>
Series<F> evaluate(const SeriesPolynomial<F>& poly, const Series<F>& t) {
  if (poly.empty()) return Series<F>(t.order(), t.variables());
  Series<F> acc = Series<F>(t.order(), t.variables());
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
  return acc;
}

template <class F>
std::vector<Series<F>> newton_algebraic_roots(const SeriesPolynomial<F>& poly, const std::vector<F>& seeds) {
  if (poly.empty()) fail(ErrorKind::Validation, "empty polynomial");
  int order = poly.front().order();
  for (const auto& c : poly) {
    require_same_variables(c, poly.front());
    order = std::min(order, c.order());
  }
  const Variables vars = poly.front().variables();
  SeriesPolynomial<F> deriv;
  for (std::size_t m = 1; m < poly.size(); ++m) deriv.push_back(F(static_cast<long>(m)) * poly[m]);

  std::vector<Series<F>> roots;
  for (const F& seed : seeds) {
    Series<F> t = Series<F>::constant(seed, order, vars);
    Series<F> dt = evaluate(deriv, t);
    if (!dt.is_unit())
      fail(ErrorKind::DegenerateBasepoint, "seed " + FieldTraits<F>::render(seed) + " is a multiple root");
    // Quadratic convergence: the valid order doubles per step.
    int valid = 0;
    int guard = 0;
    while (valid < order || guard < 2) {
      Series<F> f = evaluate(poly, t);
      dt = evaluate(deriv, t);
      t -= f * invert_unit(dt);
      valid = valid == 0 ? 1 : 2 * valid + 1;
      if (valid >= order) ++guard;
    }
    if (!evaluate(poly, t).is_zero())
      fail(ErrorKind::Internal, "Newton iteration did not converge for seed " + FieldTraits<F>::render(seed));
    roots.push_back(std::move(t));
  }
  return roots;
}

#define WEBRANK_INSTANTIATE_SERIES(F)                                                                  \
  template class Series<F>;                                                                            \
  template void require_same_variables(const Series<F>&, const Series<F>&);                            \
  template Series<F> operator+(const Series<F>&, const Series<F>&);                                    \
  template Series<F> operator-(const Series<F>&, const Series<F>&);                                    \
  template Series<F> operator-(const Series<F>&);                                                      \
  template Series<F> operator*(const Series<F>&, const Series<F>&);                                    \
  template Series<F> operator*(const F&, const Series<F>&);                                            \
  template Series<F> series_arith(const Series<F>&, const Series<F>&, SeriesOp);                       \
  template Series<F> scale(const Series<F>&, const F&);                                                \
  template Series<F> invert_unit(const Series<F>&);                                                   \
  template Series<F> differentiate(const Series<F>&, int);                                             \
  template Series<F> differentiate(const Series<F>&, const std::string&);                              \
  template Series<F> compose(const UniPoly<F>&, const Series<F>&);                                     \
  template Series<F> power(const Series<F>&, int);                                                     \
  template Series<F> evaluate(const SeriesPolynomial<F>&, const Series<F>&);                           \
  template std::vector<Series<F>> newton_algebraic_roots(const SeriesPolynomial<F>&, const std::vector<F>&);

WEBRANK_INSTANTIATE_SERIES(Rational)
WEBRANK_INSTANTIATE_SERIES(BigFloat)

}  // namespace webrank

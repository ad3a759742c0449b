#pragma once

#include "webrank/series.hpp"

namespace webrank {

/// a·dx + b·dy with both components at the same order and variables.
template <class F>
struct OneForm {
  Series<F> a;
  Series<F> b;

  int order() const { return std::min(a.order(), b.order()); }
  bool regular_at_basepoint() const { return a.is_unit() || b.is_unit(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  OneForm truncated(int n) const { return {a.truncated(n), b.truncated(n)}; }

  friend OneForm operator+(const OneForm& l, const OneForm& r) { return {l.a + r.a, l.b + r.b}; }
  friend OneForm operator-(const OneForm& l, const OneForm& r) { return {l.a - r.a, l.b - r.b}; }
  friend OneForm operator*(const Series<F>& f, const OneForm& w) { return {f * w.a, f * w.b}; }
  friend OneForm operator*(const F& s, const OneForm& w) { return {s * w.a, s * w.b}; }
};

/// cx·∂x + cy·∂y.
template <class F>
struct VectorField {
  Series<F> cx;
  Series<F> cy;

  int order() const { return std::min(cx.order(), cy.order()); }
  bool vanishes_at_basepoint() const { return !cx.is_unit() && !cy.is_unit(); }
};

template <class F>
OneForm<F> exterior_derivative(const Series<F>& f) {
  return {differentiate(f, 0), differentiate(f, 1)};
}

/// Coefficient of dx∧dy in dω.
template <class F>
Series<F> exterior_derivative(const OneForm<F>& w) {
  return differentiate(w.b, 0) - differentiate(w.a, 1);
}

/// Coefficient of dx∧dy in l∧r.
template <class F>
Series<F> wedge(const OneForm<F>& l, const OneForm<F>& r) {
  return l.a * r.b - l.b * r.a;
}

/// i_X ω.
template <class F>
Series<F> contract(const VectorField<F>& x, const OneForm<F>& w) {
  return x.cx * w.a + x.cy * w.b;
}

/// X(f).
template <class F>
Series<F> apply(const VectorField<F>& x, const Series<F>& f) {
  return x.cx * differentiate(f, 0) + x.cy * differentiate(f, 1);
}

/// L_X ω = i_X dω + d(i_X ω).
template <class F>
OneForm<F> lie_derivative(const VectorField<F>& x, const OneForm<F>& w) {
  Series<F> curl = exterior_derivative(w);
  OneForm<F> d_contract = exterior_derivative(contract(x, w));
  // i_X(h dx∧dy) = -h·cy dx + h·cx dy
  return {d_contract.a - curl * x.cy, d_contract.b + curl * x.cx};
}

/// The 1-form annihilating X: -cy dx + cx dy.
template <class F>
OneForm<F> annihilator(const VectorField<F>& x) {
  return {-x.cy, x.cx};
}

/// u with u(0) = 0 and du = f; the order of u is one more than that of f.
/// Throws NotClosed when the closedness residual does not vanish.
template <class F>
Series<F> potential_of_closed_form(const OneForm<F>& f) {
  require_same_variables(f.a, f.b);
  const int n = f.order();
  if (n >= 1 && !exterior_derivative(f).truncated(n - 1).is_zero())
    fail(ErrorKind::NotClosed, "1-form is not closed to the truncation order");
  Series<F> u(n + 1, f.a.variables());
  for (int d = 0; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      u(i + 1, j) = f.a(i, j) / F(i + 1);
    }
    u(0, d + 1) = f.b(0, d) / F(d + 1);
  }
  return u;
}

}  // namespace webrank

#include "webrank/polynomial.hpp"

#include <algorithm>
#include <type_traits>
#include <vector>

namespace webrank {

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({0, 0, 0}, c);
  return p;
}

Polynomial Polynomial::variable(int which) {
  Polynomial p;
  Exponent e{0, 0, 0};
  e[static_cast<std::size_t>(which)] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
  return d;
}

bool Polynomial::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first[0] + t.first[1] + t.first[2] == d; });
}

Rational Polynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r;
  for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
  return r;
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  Polynomial r;
  for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
  return r;
}

Polynomial Polynomial::pow(int n) const {
  Polynomial r = constant(Rational(1));
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent f = e;
    f[v] -= 1;
    r.add_term(f, c * e[v]);
  }
  return r;
}

Rational Polynomial::evaluate(const Rational& x, const Rational& y, const Rational& z) const {
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < e[0]; ++i) t *= x;
    for (int i = 0; i < e[1]; ++i) t *= y;
    for (int i = 0; i < e[2]; ++i) t *= z;
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::dehomogenized() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.add_term({e[0], e[1], 0}, c);
  return r;
}

Polynomial Polynomial::swapped(int v1, int v2) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    std::swap(f[static_cast<std::size_t>(v1)], f[static_cast<std::size_t>(v2)]);
    r.add_term(f, c);
  }
  return r;
}

template <class F>
Series<F> Polynomial::recentered(const Rational& x0, const Rational& y0, int order, Variables vars) const {
  // Expand (x0 + X)^i (y0 + Y)^j exactly, then convert.
  const int dx = std::max(degree_in(0), 0);
  const int dy = std::max(degree_in(1), 0);
  auto powers = [](const Rational& base, int n) {
    std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1;
    for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] * base;
    return p;
  };
  const auto px = powers(x0, dx);
  const auto py = powers(y0, dy);
  Series<Rational> acc(order, vars);
  for (const auto& [e, c] : terms_) {
    for (int a = 0; a <= e[0] && a <= order; ++a) {
      Rational ca = c * Rational(binomial(e[0], a)) * px[static_cast<std::size_t>(e[0] - a)];
      for (int b = 0; b <= e[1] && a + b <= order; ++b)
        acc(a, b) += ca * Rational(binomial(e[1], b)) * py[static_cast<std::size_t>(e[1] - b)];
    }
  }
  if constexpr (std::is_same_v<F, Rational>)
    return acc;
  else
    return acc.template cast<F>();
}

template Series<Rational> Polynomial::recentered<Rational>(const Rational&, const Rational&, int, Variables) const;
template Series<BigFloat> Polynomial::recentered<BigFloat>(const Rational&, const Rational&, int, Variables) const;

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    int dl = l.first[0] + l.first[1] + l.first[2];
    int dr = r.first[0] + r.first[1] + r.first[2];
    if (dl != dr) return dl > dr;
    return l.first > r.first;
  });
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  for (const auto& [e, c] : ordered) {
    std::string coeff = render_rational(abs(c));
    const bool neg = c < 0;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      const int k = e[static_cast<std::size_t>(v)];
      if (k == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (k > 1) mono += "^" + std::to_string(k);
    }
    if (mono.empty())
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace webrank

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "webrank/error.hpp"
#include "webrank/field.hpp"

namespace webrank {

/// Dense univariate polynomial, coefficients from low to high degree.
/// Also used as a univariate series truncated at `size() - 1`.
template <class F>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) {}

  static UniPoly monomial(const F& c, int degree) {
    std::vector<F> v(static_cast<std::size_t>(degree) + 1, F(0));
    v.back() = c;
    return UniPoly(std::move(v));
  }

  int size() const { return static_cast<int>(c_.size()); }
  const F& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  F& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  F coeff(int i) const { return i < size() ? c_[static_cast<std::size_t>(i)] : F(0); }
  const std::vector<F>& coefficients() const { return c_; }

  /// Degree ignoring negligible leading terms; -1 for the zero polynomial.
  int degree() const {
    for (int i = size() - 1; i >= 0; --i)
      if (!is_zero(c_[static_cast<std::size_t>(i)])) return i;
    return -1;
  }
  bool is_zero_poly() const { return degree() < 0; }

  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  UniPoly trimmed() const {
    UniPoly r = *this;
    r.trim();
    return r;
  }

  F operator()(const F& t) const {
    F acc(0);
    for (int i = size() - 1; i >= 0; --i) acc = acc * t + c_[static_cast<std::size_t>(i)];
    return acc;
  }

  UniPoly derivative() const {
    if (size() <= 1) return UniPoly();
    std::vector<F> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F(static_cast<long>(i));
    return UniPoly(std::move(v));
  }

  /// Antiderivative vanishing at 0.
  UniPoly integral() const {
    std::vector<F> v(c_.size() + 1, F(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / F(static_cast<long>(i + 1));
    return UniPoly(std::move(v));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<F> v(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<F> v(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UniPoly();
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const F& s, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Truncates to degree <= n (series view).
  UniPoly truncated(int n) const {
    std::vector<F> v(static_cast<std::size_t>(n) + 1, F(0));
    for (int i = 0; i <= n && i < size(); ++i) v[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return UniPoly(std::move(v));
  }

 private:
  std::vector<F> c_;
};

/// Quotient and remainder of polynomial division over a field.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& num, const UniPoly<F>& den) {
  const int dd = den.degree();
  if (dd < 0) fail(ErrorKind::Internal, "polynomial division by zero");
  UniPoly<F> r = num.trimmed();
  const int nd = r.degree();
  if (nd < dd) return {UniPoly<F>(), r};
  std::vector<F> q(static_cast<std::size_t>(nd - dd) + 1, F(0));
  const F lead = den[dd];
  for (int k = nd - dd; k >= 0; --k) {
    F c = r.coeff(k + dd) / lead;
    q[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) r[k + j] -= c * den[j];
    r[k + dd] = F(0);
  }
  r.trim();
  return {UniPoly<F>(std::move(q)), r};
}

/// Monic gcd; exact fields only.
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  a.trim();
  b.trim();
  while (!b.is_zero_poly()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero_poly()) return a;
  F lead = a[a.degree()];
  return (F(1) / lead) * a;
}

/// Square-free decomposition (Yun): result[m-1] collects the factors of multiplicity m.
template <class F>
std::vector<UniPoly<F>> squarefree_decomposition(const UniPoly<F>& p) {
  std::vector<UniPoly<F>> out;
  UniPoly<F> f = p.trimmed();
  if (f.degree() <= 0) return out;
  UniPoly<F> fp = f.derivative();
  UniPoly<F> a = gcd(f, fp);
  UniPoly<F> b = divmod(f, a).first;
  UniPoly<F> c = divmod(fp, a).first;
  UniPoly<F> d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly<F> g = gcd(b, d);
    if (g.is_zero_poly()) g = UniPoly<F>({F(1)});
    out.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() <= 0) out.pop_back();
  return out;
}

/// Number of distinct real roots in the half-open interval (lo, hi], by Sturm's theorem.
template <class F>
int sturm_count(const UniPoly<F>& p, const F& lo, const F& hi) {
  std::vector<UniPoly<F>> seq;
  seq.push_back(p.trimmed());
  seq.push_back(seq[0].derivative().trimmed());
  while (seq.back().degree() > 0) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero_poly()) break;
    seq.push_back(F(-1) * r);
  }
  auto variations = [&](const F& t) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
      F v = s(t);
      int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

/// exp(lambda * t) truncated at degree n.
template <class F>
UniPoly<F> exp_series(const F& lambda, int n) {
  std::vector<F> v(static_cast<std::size_t>(n) + 1);
  v[0] = F(1);
  for (int m = 1; m <= n; ++m) v[static_cast<std::size_t>(m)] = v[static_cast<std::size_t>(m - 1)] * lambda / F(m);
  return UniPoly<F>(std::move(v));
}

/// Renders a polynomial in the variable `var`, e.g. "3/2*u^2 - u + 1".
template <class F>
std::string render_poly(const UniPoly<F>& p, const std::string& var) {
  std::string out;
  for (int i = p.size() - 1; i >= 0; --i) {
    const F& c = p[i];
    if (is_zero(c)) continue;
    std::string s = FieldTraits<F>::render(c);
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(0, 1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      out += s;
    else if (s == "1")
      out += mono;
    else
      out += s + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace webrank

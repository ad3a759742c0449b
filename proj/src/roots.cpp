#include "webrank/roots.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace webrank {

namespace {

struct Cx {
  BigFloat re;
  BigFloat im;
};

Cx mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx sub(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx divide(const Cx& a, const Cx& b) {
  BigFloat den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
BigFloat norm(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

}  // namespace

std::vector<ComplexRoot> complex_roots(const UniPoly<BigFloat>& p) {
  const int n = p.degree();
  if (n < 1) fail(ErrorKind::Internal, "root finding needs a polynomial of positive degree");
  std::vector<BigFloat> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = p[i] / p[n];
  BigFloat radius(1);
  for (int i = 0; i < n; ++i) radius = std::max(radius, BigFloat(1) + BigFloat(abs(c[static_cast<std::size_t>(i)])));

  std::vector<Cx> z(static_cast<std::size_t>(n));
  const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
  for (int k = 0; k < n; ++k) {
    BigFloat angle = two_pi * k / n + BigFloat(0.4);
    z[static_cast<std::size_t>(k)] = {radius * cos(angle), radius * sin(angle)};
  }
  auto eval = [&](const Cx& t) {
    Cx acc{c[static_cast<std::size_t>(n)], BigFloat(0)};
    for (int i = n - 1; i >= 0; --i) {
      acc = mul(acc, t);
      acc.re += c[static_cast<std::size_t>(i)];
    }
    return acc;
  };

  const BigFloat eps = pow(BigFloat(2), -static_cast<int>(current_precision_bits()) + 8);
  for (int iter = 0; iter < 20000; ++iter) {
    BigFloat worst(0);
    for (int k = 0; k < n; ++k) {
      Cx& zk = z[static_cast<std::size_t>(k)];
      Cx den{BigFloat(1), BigFloat(0)};
      for (int j = 0; j < n; ++j)
        if (j != k) den = mul(den, sub(zk, z[static_cast<std::size_t>(j)]));
      if (den.re == 0 && den.im == 0) den.re = eps;
      Cx step = divide(eval(zk), den);
      zk = sub(zk, step);
      worst = std::max(worst, BigFloat(norm(step) / std::max(BigFloat(1), norm(zk))));
    }
    if (worst <= eps) break;
  }
  std::vector<ComplexRoot> out;
  for (auto& r : z) out.push_back({r.re, r.im});
  std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  return out;
}

std::optional<Rational> recognize_rational(const BigFloat& v, long max_den, const BigFloat& tol) {
  // Convergents h/k of the continued fraction of v.
  Integer h0(0), h1(1), k0(1), k1(0);
  BigFloat x = v;
  std::optional<Rational> best;
  for (int step = 0; step < 64; ++step) {
    BigFloat fl = floor(x);
    Integer a(fl.convert_to<Integer>());
    Integer h2 = a * h1 + h0;
    Integer k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational q(h1, k1);
    BigFloat err = abs(v - from_rational<BigFloat>(q));
    if (err <= tol * std::max(BigFloat(1), BigFloat(abs(v)))) {
      best = q;
      break;
    }
    BigFloat frac = x - fl;
    if (frac == 0) break;
    x = 1 / frac;
  }
  return best;
}

std::vector<std::pair<Rational, int>> rational_roots(const UniPoly<Rational>& p) {
  std::vector<std::pair<Rational, int>> out;
  std::vector<UniPoly<Rational>> parts = squarefree_decomposition(p);
  PrecisionScope scope(256, 1e-30);
  for (std::size_t m = 0; m < parts.size(); ++m) {
    UniPoly<Rational> f = parts[m];
    if (f.degree() < 1) continue;
    std::vector<BigFloat> fc;
    for (int i = 0; i <= f.degree(); ++i) fc.push_back(from_rational<BigFloat>(f[i]));
    for (const ComplexRoot& r : complex_roots(UniPoly<BigFloat>(fc))) {
      if (abs(r.im) > BigFloat(1e-20) * std::max(BigFloat(1), BigFloat(abs(r.re)))) continue;
      auto q = recognize_rational(r.re, 1000000000L, BigFloat(1e-40));
      if (!q || f(*q) != 0) continue;
      out.emplace_back(*q, static_cast<int>(m) + 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace webrank

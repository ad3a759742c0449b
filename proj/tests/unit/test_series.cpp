#include <doctest.h>

#include <random>

#include "webrank/forms.hpp"
#include "webrank/series.hpp"

using namespace webrank;

namespace {

using S = Series<Rational>;

S x(int n) { return S::variable(0, n); }
S y(int n) { return S::variable(1, n); }
S one(int n) { return S::constant(Rational(1), n); }

S random_series(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> d(-9, 9);
  S s(n, {});
  for (int t = 0; t <= n; ++t)
    for (int j = 0; j <= t; ++j) s(t - j, j) = Rational(d(rng), 1 + (d(rng) + 9) % 5);
  return s;
}

}  // namespace

TEST_CASE("ring operations") {
  S p = (one(4) + x(4)) * (one(4) - x(4));
  CHECK(p.coeff(0, 0) == 1);
  CHECK(p.coeff(2, 0) == -1);
  CHECK(p.coeff(1, 0) == 0);
  CHECK(p.coeff(4, 0) == 0);

  S s = x(3) * y(3) + one(3);
  CHECK((s + S(3, {})).coefficients().size() == s.coefficients().size());
  CHECK(((s + S(3, {})) - s).is_zero());

  S sq = (x(2) + y(2)) * (x(2) + y(2));
  CHECK(sq.coeff(2, 0) == 1);
  CHECK(sq.coeff(1, 1) == 2);
  CHECK(sq.coeff(0, 2) == 1);
}

TEST_CASE("result order is the smaller operand order") {
  CHECK((x(3) * y(5)).order() == 3);
  CHECK((x(7) + y(2)).order() == 2);
}

TEST_CASE("mismatched variables are rejected") {
  S a = S::variable(0, 3, {"x", "y"});
  S b = S::variable(0, 3, {"p", "q"});
  CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("unit inversion") {
  CHECK((invert_unit(one(3)) - one(3)).is_zero());

  S g = invert_unit(one(3) - x(3));
  for (int i = 0; i <= 3; ++i) CHECK(g.coeff(i, 0) == 1);

  S h = invert_unit(S::constant(Rational(2), 2) + y(2));
  CHECK(h.coeff(0, 0) == Rational(1, 2));
  CHECK(h.coeff(0, 1) == Rational(-1, 4));
  CHECK(h.coeff(0, 2) == Rational(1, 8));
  CHECK(((S::constant(Rational(2), 2) + y(2)) * h - one(2)).is_zero());

  CHECK_THROWS_AS(invert_unit(x(3)), Error);
}

TEST_CASE("partial derivatives") {
  S s = x(4) * x(4) * y(4);
  S d = differentiate(s, 0);
  CHECK(d.order() == 3);
  CHECK(d.coeff(1, 1) == 2);
  CHECK(differentiate(one(3), 1).is_zero());

  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    S r = random_series(rng, 6);
    CHECK((differentiate(differentiate(r, 0), 1) - differentiate(differentiate(r, 1), 0)).is_zero());
  }
}

TEST_CASE("potentials of closed forms") {
  const int n = 5;
  auto u = potential_of_closed_form(OneForm<Rational>{S(n, {}), one(n)});
  CHECK((u - y(n + 1)).is_zero());

  u = potential_of_closed_form(OneForm<Rational>{y(n), x(n)});
  CHECK((u - x(n + 1) * y(n + 1)).is_zero());

  S geo = invert_unit(one(n) + x(n));
  u = potential_of_closed_form(OneForm<Rational>{geo, S(n, {})});
  for (int i = 1; i <= n + 1; ++i) CHECK(u.coeff(i, 0) == Rational(i % 2 ? 1 : -1, i));

  CHECK_THROWS_AS(potential_of_closed_form(OneForm<Rational>{y(n), S(n, {})}), Error);
}

TEST_CASE("algebraic branches by Newton iteration") {
  const int n = 6;
  SeriesPolynomial<Rational> sqrt_poly{-(one(n) + x(n)), S(n, {}), one(n)};
  auto roots = newton_algebraic_roots(sqrt_poly, std::vector<Rational>{Rational(1)});
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].coeff(1, 0) == Rational(1, 2));
  CHECK(roots[0].coeff(2, 0) == Rational(-1, 8));
  CHECK((roots[0] * roots[0] - one(n) - x(n)).is_zero());

  std::mt19937 rng(3);
  S s = random_series(rng, n);
  SeriesPolynomial<Rational> lin{-s, one(n)};
  auto t = newton_algebraic_roots(lin, std::vector<Rational>{s.constant_term()});
  CHECK((t[0] - s).is_zero());

  // t^2 - p t - q around (p, q) = (0, 1)
  S p = x(n), q = one(n) + y(n);
  SeriesPolynomial<Rational> quad{-q, -p, one(n)};
  auto pm = newton_algebraic_roots(quad, std::vector<Rational>{Rational(1), Rational(-1)});
  REQUIRE(pm.size() == 2);
  CHECK(pm[0].constant_term() == 1);
  CHECK(pm[1].constant_term() == -1);
  CHECK((pm[0] + pm[1] - p).is_zero());
  CHECK((pm[0] * pm[1] + q).is_zero());
}

TEST_CASE("big-float series agree with exact series") {
  PrecisionScope scope(256, 1e-60);
  S g = invert_unit(S::constant(Rational(3), 5) - x(5) + y(5) * y(5));
  Series<BigFloat> gf = invert_unit(g.cast<BigFloat>().truncated(5));
  Series<BigFloat> back = invert_unit((S::constant(Rational(3), 5) - x(5) + y(5) * y(5)).cast<BigFloat>());
  CHECK((back - g.cast<BigFloat>()).is_zero());
  CHECK(gf.order() == 5);
}

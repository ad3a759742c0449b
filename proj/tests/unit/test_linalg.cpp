#include <doctest.h>

#include <random>

#include "webrank/linalg.hpp"
#include "webrank/roots.hpp"

using namespace webrank;

namespace {

template <class F>
Matrix<F> from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix<F> m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = F(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

template <class F>
bool annihilates(const Matrix<F>& a, const std::vector<F>& v) {
  for (int r = 0; r < a.rows(); ++r) {
    F s = 0;
    for (int c = 0; c < a.cols(); ++c) s += a(r, c) * v[static_cast<std::size_t>(c)];
    if (!is_zero(s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact kernel") {
  auto a = from_rows<Rational>({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto k = kernel(a);
  CHECK(k.rank == 2);
  REQUIRE(k.basis.size() == 1);
  CHECK(annihilates(a, k.basis[0]));
  CHECK(matrix_rank(a) == 2);
}

TEST_CASE("float kernel certifies the gap") {
  PrecisionScope scope(256, 1e-30);
  auto a = from_rows<BigFloat>({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto k = kernel(a);
  CHECK(k.rank == 2);
  REQUIRE(k.basis.size() == 1);
  CHECK(annihilates(a, k.basis[0]));

  Matrix<BigFloat> near = a;
  near(1, 2) += BigFloat("1e-4");
  PrecisionScope coarse(256, 1e-3);
  try {
    kernel(near);
    FAIL("no gap failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NumericalInstability);
  }
}

TEST_CASE("exact and float ranks agree on random integer matrices") {
  PrecisionScope scope(256, 1e-30);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 10; ++t) {
    const int rank = 1 + t % 4;
    Matrix<Rational> l(7, rank), r(rank, 6);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < rank; ++j) l(i, j) = d(rng);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < 6; ++j) r(i, j) = d(rng);
    Matrix<Rational> m = l * r;
    Matrix<BigFloat> mf(7, 6);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 6; ++j) mf(i, j) = from_rational<BigFloat>(m(i, j));
    CHECK(matrix_rank(m) == matrix_rank(mf));
  }
}

TEST_CASE("characteristic polynomial and inverse") {
  auto m = from_rows<Rational>({{2, 1, 0}, {0, 2, 0}, {0, 0, 3}});
  auto p = characteristic_polynomial(m);
  // (t-2)^2 (t-3) = t^3 - 7t^2 + 16t - 12
  REQUIRE(p.degree() == 3);
  CHECK(p[0] == -12);
  CHECK(p[1] == 16);
  CHECK(p[2] == -7);
  CHECK(p[3] == 1);
  CHECK((inverse(m) * m - Matrix<Rational>::identity(3)).is_zero());

  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == std::pair<Rational, int>{Rational(2), 2});
  CHECK(roots[1] == std::pair<Rational, int>{Rational(3), 1});
}

TEST_CASE("consistent solves") {
  auto a = from_rows<Rational>({{1, 1}, {1, -1}, {2, 0}});
  auto x = solve_consistent(a, std::vector<Rational>{3, 1, 4});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_consistent(a, std::vector<Rational>{3, 1, 5}));
}

TEST_CASE("rational recognition") {
  PrecisionScope scope(256, 1e-30);
  auto q = recognize_rational(BigFloat(22) / 7, 1000, BigFloat("1e-40"));
  REQUIRE(q);
  CHECK(*q == Rational(22, 7));
  CHECK_FALSE(recognize_rational(sqrt(BigFloat(2)), 1000, BigFloat("1e-40")));
}

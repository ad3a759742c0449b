#include "webrank/linalg.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "webrank/error.hpp"

namespace webrank {
namespace {

using IntRow = std::vector<Integer>;

/// Clears denominators row by row.
std::vector<IntRow> integer_rows(const Matrix<Rational>& a) {
  std::vector<IntRow> rows(static_cast<std::size_t>(a.rows()), IntRow(static_cast<std::size_t>(a.cols())));
  for (int r = 0; r < a.rows(); ++r) {
    Integer l = 1;
    for (int c = 0; c < a.cols(); ++c) {
      const Integer& d = denominator(a(r, c));
      if (d != 1) l = boost::multiprecision::lcm(l, d);
    }
    for (int c = 0; c < a.cols(); ++c)
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = numerator(a(r, c)) * (l / denominator(a(r, c)));
  }
  return rows;
}

/// Fraction-free Gaussian elimination in place; returns pivot columns.
/// Column `limit` and beyond are carried along but never chosen as pivots.
std::vector<int> bareiss_echelon(std::vector<IntRow>& m, int limit) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  std::vector<int> pivots;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < limit && r < rows; ++c) {
    // Smallest nonzero entry keeps the intermediate numbers short.
    int best = -1;
    for (int i = r; i < rows; ++i) {
      const Integer& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (v == 0) continue;
      if (best < 0 || abs(v) < abs(m[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)])) best = i;
    }
    if (best < 0) continue;
    std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(best)]);
    const IntRow& piv = m[static_cast<std::size_t>(r)];
    const Integer p = piv[static_cast<std::size_t>(c)];
    for (int i = r + 1; i < rows; ++i) {
      IntRow& row = m[static_cast<std::size_t>(i)];
      const Integer f = row[static_cast<std::size_t>(c)];
      for (int j = c + 1; j < cols; ++j) {
        Integer& x = row[static_cast<std::size_t>(j)];
        x = p * x - f * piv[static_cast<std::size_t>(j)];
        if (prev != 1) x /= prev;
      }
      row[static_cast<std::size_t>(c)] = 0;
    }
    prev = p;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Back substitution on an echelon form for the given free-variable assignment.
std::vector<Rational> back_substitute(const std::vector<IntRow>& m, const std::vector<int>& pivots, int n,
                                      std::vector<Rational> x, int rhs_col = -1) {
  for (int t = static_cast<int>(pivots.size()) - 1; t >= 0; --t) {
    const int c = pivots[static_cast<std::size_t>(t)];
    const IntRow& row = m[static_cast<std::size_t>(t)];
    Rational acc = rhs_col >= 0 ? Rational(row[static_cast<std::size_t>(rhs_col)]) : Rational(0);
    for (int j = c + 1; j < n; ++j) {
      const Integer& v = row[static_cast<std::size_t>(j)];
      if (v == 0 || x[static_cast<std::size_t>(j)] == 0) continue;
      acc -= Rational(v) * x[static_cast<std::size_t>(j)];
    }
    x[static_cast<std::size_t>(c)] = acc / Rational(row[static_cast<std::size_t>(c)]);
  }
  return x;
}

KernelResult<Rational> exact_kernel(const Matrix<Rational>& a) {
  const int n = a.cols();
  auto m = integer_rows(a);
  auto pivots = bareiss_echelon(m, n);
  KernelResult<Rational> out;
  out.rank = static_cast<int>(pivots.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
    x[static_cast<std::size_t>(f)] = 1;
    out.basis.push_back(back_substitute(m, pivots, n, std::move(x)));
  }
  return out;
}

using EMatrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;

EMatrix to_eigen(const Matrix<BigFloat>& a) {
  EMatrix e(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) e(r, c) = a(r, c);
  return e;
}

struct FloatFactorization {
  EMatrix r;
  Eigen::ColPivHouseholderQR<EMatrix>::PermutationType perm;
  std::vector<BigFloat> col_scale;
  int rank = 0;
  std::optional<double> gap;
};

FloatFactorization float_factorize(const Matrix<BigFloat>& a) {
  const int m = a.rows();
  const int n = a.cols();
  EMatrix e = to_eigen(a);
  for (int i = 0; i < m; ++i) {
    BigFloat mx = 0;
    for (int j = 0; j < n; ++j) mx = std::max<BigFloat>(mx, abs(e(i, j)));
    if (mx > 0)
      for (int j = 0; j < n; ++j) e(i, j) /= mx;
  }
  FloatFactorization f;
  f.col_scale.assign(static_cast<std::size_t>(n), BigFloat(1));
  for (int j = 0; j < n; ++j) {
    BigFloat s = 0;
    for (int i = 0; i < m; ++i) s += e(i, j) * e(i, j);
    s = sqrt(s);
    if (s > 0) {
      f.col_scale[static_cast<std::size_t>(j)] = BigFloat(1) / s;
      for (int i = 0; i < m; ++i) e(i, j) /= s;
    }
  }
  Eigen::ColPivHouseholderQR<EMatrix> qr(e);
  f.r = qr.matrixQR().template triangularView<Eigen::Upper>();
  f.perm = qr.colsPermutation();
  const int diag = std::min(m, n);
  const BigFloat tol(FieldTraits<BigFloat>::tolerance());
  const BigFloat top = diag > 0 ? abs(f.r(0, 0)) : BigFloat(0);
  int rank = 0;
  while (rank < diag && top > 0 && abs(f.r(rank, rank)) > tol * top) ++rank;
  f.rank = rank;
  if (rank < n && rank > 0) {
    // sigma_{r+1}(A) <= ||R22||_F and sigma_r(A) >= sigma_min(R11) >= 1/||R11^{-1}||_F.
    BigFloat r22 = 0;
    for (int i = rank; i < diag; ++i)
      for (int j = i; j < n; ++j) r22 += f.r(i, j) * f.r(i, j);
    r22 = sqrt(r22);
    if (r22 > 0) {
      EMatrix r11 = f.r.topLeftCorner(rank, rank);
      EMatrix inv = r11.template triangularView<Eigen::Upper>().solve(EMatrix::Identity(rank, rank));
      BigFloat inv_norm = 0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) inv_norm += inv(i, j) * inv(i, j);
      inv_norm = sqrt(inv_norm);
      BigFloat ratio = BigFloat(1) / (inv_norm * r22);
      f.gap = ratio > BigFloat(1e300) ? 1e300 : ratio.convert_to<double>();
      if (ratio < BigFloat(kMinGapRatio))
        fail(ErrorKind::NumericalInstability,
             "no clear singular-value gap at numerical rank " + std::to_string(rank) + " (certified ratio " +
                 render_float(ratio, 6) + " < 1e6); increase --precision");
    }
  }
  return f;
}

KernelResult<BigFloat> float_kernel(const Matrix<BigFloat>& a) {
  const int n = a.cols();
  KernelResult<BigFloat> out;
  if (n == 0) return out;
  FloatFactorization f = float_factorize(a);
  out.rank = f.rank;
  out.gap = f.gap;
  const int r = f.rank;
  EMatrix r11 = f.r.topLeftCorner(r, r);
  for (int free = r; free < n; ++free) {
    EVector y = EVector::Zero(n);
    y(free) = 1;
    if (r > 0) {
      EVector rhs = -f.r.block(0, free, r, 1);
      EVector sol = r11.template triangularView<Eigen::Upper>().solve(rhs);
      for (int i = 0; i < r; ++i) y(i) = sol(i);
    }
    EVector x = f.perm * y;
    std::vector<BigFloat> v(static_cast<std::size_t>(n));
    BigFloat mx = 0;
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = x(i) * f.col_scale[static_cast<std::size_t>(i)];
      mx = std::max<BigFloat>(mx, abs(v[static_cast<std::size_t>(i)]));
    }
    if (mx > 0)
      for (auto& t : v) t /= mx;
    out.basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace

template <>
KernelResult<Rational> kernel(const Matrix<Rational>& a) {
  return exact_kernel(a);
}

template <>
KernelResult<BigFloat> kernel(const Matrix<BigFloat>& a) {
  return float_kernel(a);
}

template <>
std::optional<std::vector<Rational>> solve_consistent(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  const int n = a.cols();
  Matrix<Rational> aug(a.rows(), n + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[static_cast<std::size_t>(r)];
  }
  auto m = integer_rows(aug);
  auto pivots = bareiss_echelon(m, n);
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    if (m[i][static_cast<std::size_t>(n)] != 0) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
  return back_substitute(m, pivots, n, std::move(x), n);
}

template <>
std::optional<std::vector<BigFloat>> solve_consistent(const Matrix<BigFloat>& a, const std::vector<BigFloat>& b) {
  EMatrix e = to_eigen(a);
  EVector rhs(a.rows());
  BigFloat bmax = 1;
  for (int r = 0; r < a.rows(); ++r) {
    rhs(r) = b[static_cast<std::size_t>(r)];
    bmax = std::max<BigFloat>(bmax, abs(rhs(r)));
  }
  Eigen::ColPivHouseholderQR<EMatrix> qr(e);
  EVector x = qr.solve(rhs);
  EVector res = e * x - rhs;
  BigFloat worst = 0;
  for (int r = 0; r < a.rows(); ++r) worst = std::max<BigFloat>(worst, abs(res(r)));
  if (worst > BigFloat(FieldTraits<BigFloat>::tolerance()) * bmax) return std::nullopt;
  std::vector<BigFloat> out(static_cast<std::size_t>(a.cols()));
  for (int i = 0; i < a.cols(); ++i) out[static_cast<std::size_t>(i)] = x(i);
  return out;
}

template <>
int matrix_rank(const Matrix<Rational>& a) {
  auto m = integer_rows(a);
  return static_cast<int>(bareiss_echelon(m, a.cols()).size());
}

template <>
int matrix_rank(const Matrix<BigFloat>& a) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  return float_factorize(a).rank;
}

template <class F>
UniPoly<F> characteristic_polynomial(const Matrix<F>& m) {
  const int n = m.rows();
  if (m.cols() != n) fail(ErrorKind::Internal, "characteristic polynomial of a non-square matrix");
  Matrix<F> h = m;
  // Reduce to upper Hessenberg form by stabilized elimination similarities.
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    F best(0);
    for (int i = j + 1; i < n; ++i) {
      F v = abs(h(i, j));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv < 0 || best == 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (int r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    for (int i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      F u = h(i, j) / h(j + 1, j);
      for (int c = 0; c < n; ++c) h(i, c) -= u * h(j + 1, c);
      for (int r = 0; r < n; ++r) h(r, j + 1) += u * h(r, i);
    }
  }
  // p_k(t) = (t - h_kk) p_{k-1}(t) - sum_{i<k} h_ik (prod_{l=i+1..k} h_{l,l-1}) p_{i-1}(t), 1-indexed.
  std::vector<UniPoly<F>> p(static_cast<std::size_t>(n) + 1);
  p[0] = UniPoly<F>({F(1)});
  for (int k = 1; k <= n; ++k) {
    UniPoly<F> acc = UniPoly<F>({-h(k - 1, k - 1), F(1)}) * p[static_cast<std::size_t>(k - 1)];
    F prod(1);
    for (int i = k - 1; i >= 1; --i) {
      prod *= h(i, i - 1);
      if (prod == 0) break;
      acc = acc - (prod * h(i - 1, k - 1)) * p[static_cast<std::size_t>(i - 1)];
    }
    p[static_cast<std::size_t>(k)] = acc;
  }
  UniPoly<F> out = p[static_cast<std::size_t>(n)];
  std::vector<F> c(static_cast<std::size_t>(n) + 1, F(0));
  for (int i = 0; i <= n && i < out.size(); ++i) c[static_cast<std::size_t>(i)] = out[i];
  return UniPoly<F>(std::move(c));
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  const int n = m.rows();
  Matrix<F> a = m;
  Matrix<F> inv = Matrix<F>::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    F best(0);
    for (int r = c; r < n; ++r) {
      F v = abs(a(r, c));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0 || is_zero(best)) fail(ErrorKind::Internal, "matrix is singular");
    for (int j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    F p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      F f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

template UniPoly<Rational> characteristic_polynomial(const Matrix<Rational>&);
template UniPoly<BigFloat> characteristic_polynomial(const Matrix<BigFloat>&);
template Matrix<Rational> inverse(const Matrix<Rational>&);
template Matrix<BigFloat> inverse(const Matrix<BigFloat>&);

}  // namespace webrank

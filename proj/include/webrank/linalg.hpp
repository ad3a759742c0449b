#pragma once

#include <optional>
#include <vector>

#include "webrank/field.hpp"
#include "webrank/univariate.hpp"

namespace webrank {

/// Dense row-major matrix.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, F(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  F& operator()(int r, int c) { return d_[static_cast<std::size_t>(r) * cols_ + c]; }
  const F& operator()(int r, int c) const { return d_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<F> column(int c) const {
    std::vector<F> v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = (*this)(r, c);
    return v;
  }
  void set_column(int c, const std::vector<F>& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[static_cast<std::size_t>(r)];
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (x == 0) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.d_.size(); ++i) a.d_[i] -= b.d_[i];
    return a;
  }
  bool is_zero() const {
    for (const auto& v : d_)
      if (!webrank::is_zero(v)) return false;
    return true;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<F> d_;
};

template <class F>
struct KernelResult {
  /// Basis vectors of the null space, each of length cols().
  std::vector<std::vector<F>> basis;
  int rank = 0;
  /// Big-float mode only: certified lower bound on the ratio between the
  /// smallest kept and the largest dropped singular value (nullopt when no
  /// value was dropped or the dropped block is exactly zero).
  std::optional<double> gap;
};

/// Null space of `a`.
///
/// Exact mode: fraction-free (Bareiss) elimination on integer-scaled rows,
/// basis normalized with a unit entry on each free column.
/// Big-float mode: rows and columns equilibrated, Householder QR with column
/// pivoting; the numerical rank cuts where |R_ii| drops below
/// `tolerance * |R_00|`, and the cut is certified with
/// sigma_min(R11) / ||R22||_F >= kMinGapRatio or NumericalInstability is thrown.
template <class F>
KernelResult<F> kernel(const Matrix<F>& a);

/// Solves a·x = b for a consistent system, returning nullopt when the
/// residual does not vanish. Free variables are set to zero.
template <class F>
std::optional<std::vector<F>> solve_consistent(const Matrix<F>& a, const std::vector<F>& b);

/// Rank of `a` (exact, or numerical with the same gap rule as kernel()).
template <class F>
int matrix_rank(const Matrix<F>& a);

/// Characteristic polynomial det(t·I - m), via Hessenberg reduction.
template <class F>
UniPoly<F> characteristic_polynomial(const Matrix<F>& m);

/// Inverse of a square matrix; throws on singular input.
template <class F>
Matrix<F> inverse(const Matrix<F>& m);

}  // namespace webrank

#pragma once

#include <complex>
#include <vector>

#include "lmop/error.hpp"

namespace lmop {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  /// Max row sum of absolute values.
  double inf_norm() const;

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  /// Delete one column; used for bordered-determinant expansions.
  ComplexMatrix without_column(int col) const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& x);

/// Partial-pivoting LU factorization of a square matrix.
class LuFactor {
 public:
  explicit LuFactor(const ComplexMatrix& a);

  /// True if some pivot fell below dim * eps * max-row-norm.
  bool singular() const { return singular_; }

  Complex determinant() const;

  /// Solve A x = b; throws Singular if factorization found a tiny pivot.
  std::vector<Complex> solve(const std::vector<Complex>& b) const;

  /// Solve A^H x = b from the same factorization.
  std::vector<Complex> solve_adjoint(const std::vector<Complex>& b) const;

 private:
  int n_ = 0;
  ComplexMatrix lu_;
  std::vector<int> perm_;  // row i of U came from row perm_[i] of A
  int sign_ = 1;
  bool singular_ = false;
  double pivot_floor_ = 0.0;
};

std::vector<Complex> lu_solve(const ComplexMatrix& a, const std::vector<Complex>& b);
Complex det(const ComplexMatrix& a);

/// Estimate of the smallest singular value via inverse power iteration on
/// A^H A; returns 0 for singular input.
double smallest_singular_value_estimate(const ComplexMatrix& a, int iterations = 32);

struct LeastSquaresResult {
  std::vector<Complex> x;
  double residual_inf = 0.0;   // max |Ax - b|
  double gram_sigma_min = 0.0; // conditioning of the normal equations
};

/// Minimize |Ax - b|_2 via the normal equations (small well-scaled systems).
LeastSquaresResult least_squares(const ComplexMatrix& a, const std::vector<Complex>& b);

}  // namespace lmop

#include "lmop/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace lmop {

double ComplexMatrix::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix ComplexMatrix::without_column(int col) const {
  ComplexMatrix out(rows_, cols_ - 1);
  for (int i = 0; i < rows_; ++i) {
    int jj = 0;
    for (int j = 0; j < cols_; ++j) {
      if (j == col) continue;
      out(i, jj++) = (*this)(i, j);
    }
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(Errc::DimensionMismatch, "matrix product shapes");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    fail(Errc::DimensionMismatch, "matrix-vector shapes");
  std::vector<Complex> y(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

LuFactor::LuFactor(const ComplexMatrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) fail(Errc::DimensionMismatch, "LU requires a square matrix");
  std::iota(perm_.begin(), perm_.end(), 0);

  double max_row_norm = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s = std::max(s, std::abs(lu_(i, j)));
    max_row_norm = std::max(max_row_norm, s);
  }
  pivot_floor_ = n_ * std::numeric_limits<double>::epsilon() * max_row_norm;

  for (int k = 0; k < n_; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n_; ++i) {
      double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p != k) {
      for (int j = 0; j < n_; ++j) std::swap(lu_(p, j), lu_(k, j));
      std::swap(perm_[p], perm_[k]);
      sign_ = -sign_;
    }
    const Complex pivot = lu_(k, k);
    if (std::abs(pivot) <= pivot_floor_) singular_ = true;
    if (pivot == 0.0) continue;
    for (int i = k + 1; i < n_; ++i) {
      const Complex m = lu_(i, k) / pivot;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (int j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

Complex LuFactor::determinant() const {
  Complex d = static_cast<double>(sign_);
  for (int i = 0; i < n_; ++i) d *= lu_(i, i);
  return d;
}

std::vector<Complex> LuFactor::solve(const std::vector<Complex>& b) const {
  if (static_cast<int>(b.size()) != n_) fail(Errc::DimensionMismatch, "rhs size");
  if (singular_) fail(Errc::Singular, "pivot below threshold");
  std::vector<Complex> y(n_);
  for (int i = 0; i < n_; ++i) {
    Complex s = b[perm_[i]];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    Complex s = y[i];
    for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

std::vector<Complex> LuFactor::solve_adjoint(const std::vector<Complex>& b) const {
  if (static_cast<int>(b.size()) != n_) fail(Errc::DimensionMismatch, "rhs size");
  if (singular_) fail(Errc::Singular, "pivot below threshold");
  // A^H = U^H L^H P with PA = LU.
  std::vector<Complex> w(n_);
  for (int i = 0; i < n_; ++i) {
    Complex s = b[i];
    for (int j = 0; j < i; ++j) s -= std::conj(lu_(j, i)) * w[j];
    w[i] = s / std::conj(lu_(i, i));
  }
  for (int i = n_ - 1; i >= 0; --i) {
    Complex s = w[i];
    for (int j = i + 1; j < n_; ++j) s -= std::conj(lu_(j, i)) * w[j];
    w[i] = s;
  }
  std::vector<Complex> x(n_);
  for (int i = 0; i < n_; ++i) x[perm_[i]] = w[i];
  return x;
}

std::vector<Complex> lu_solve(const ComplexMatrix& a, const std::vector<Complex>& b) {
  return LuFactor(a).solve(b);
}

Complex det(const ComplexMatrix& a) { return LuFactor(a).determinant(); }

double smallest_singular_value_estimate(const ComplexMatrix& a, int iterations) {
  if (a.rows() != a.cols()) fail(Errc::DimensionMismatch, "sigma_min requires square matrix");
  const int n = a.rows();
  if (n == 0) return std::numeric_limits<double>::infinity();
  LuFactor lu(a);
  if (lu.singular()) return 0.0;

  // Deterministic pseudo-random start vector to avoid symmetry traps.
  std::vector<Complex> v(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    double re = 0.5 + static_cast<double>(state >> 40) / static_cast<double>(1ull << 24);
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    double im = static_cast<double>(state >> 40) / static_cast<double>(1ull << 24) - 0.5;
    v[i] = Complex(re, im);
  }

  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Complex> y = lu.solve_adjoint(v);
    std::vector<Complex> w = lu.solve(y);
    double norm = 0.0;
    for (const Complex& c : w) norm += std::norm(c);
    norm = std::sqrt(norm);
    if (norm == 0.0 || !std::isfinite(norm)) return 0.0;
    lambda = norm;
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return 1.0 / std::sqrt(lambda);
}

LeastSquaresResult least_squares(const ComplexMatrix& a, const std::vector<Complex>& b) {
  if (a.rows() < a.cols()) fail(Errc::DimensionMismatch, "least_squares needs rows >= cols");
  if (a.rows() != static_cast<int>(b.size())) fail(Errc::DimensionMismatch, "rhs size");
  const ComplexMatrix ah = a.adjoint();
  const ComplexMatrix gram = ah * a;
  std::vector<Complex> rhs = ah * b;
  LeastSquaresResult out;
  out.gram_sigma_min = smallest_singular_value_estimate(gram);
  out.x = lu_solve(gram, rhs);
  std::vector<Complex> ax = a * out.x;
  for (std::size_t i = 0; i < ax.size(); ++i)
    out.residual_inf = std::max(out.residual_inf, std::abs(ax[i] - b[i]));
  return out;
}

}  // namespace lmop

#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "lmop/linalg.hpp"
#include "lmop/measures.hpp"

namespace lmop {

namespace defaults {
inline constexpr double eps_normal = 1e-10;
inline constexpr double resid_tol = 1e-9;
}  // namespace defaults

/// Numeric normality verdict: the boolean is sigma_min / |M| > eps, the raw
/// determinant and conditioning data ride along.
struct NormalityReport {
  Complex det = 1.0;
  double sigma_min = 0.0;
  double matrix_norm = 0.0;
  bool sufficient_support = true;
  bool normal = false;
};

/// Moment matrix M_n, stacked blocks of n_j rows per measure.
struct MomentMatrix {
  MultiIndex index;
  ComplexMatrix mat;
  std::vector<int> block_row_offsets;
};

/// Moment matrix Omega_{n,m} of the two-sided problem.
struct OmegaMatrix {
  MultiIndex n, m;
  ComplexMatrix mat;
  std::vector<int> block_row_offsets;
};

/// Type I object: one Laurent polynomial per measure.
struct TypeIVector {
  std::vector<HalfLaurentPoly> components;

  TypeIVector sharp() const;
  TypeIVector mul_by_power(int twice_exp) const;
  TypeIVector operator+(const TypeIVector& rhs) const;
  TypeIVector operator-(const TypeIVector& rhs) const;
  TypeIVector scaled(Complex factor) const;
  double l1_norm() const;
  double max_coeff_distance(const TypeIVector& other) const;
};

/// Entry (block j, row k, column l) = half-moment with twice-exponent
/// (2l - |n|) + (n_j - 2k).
MomentMatrix build_moment_matrix(const MeasureSystem& sys, const MultiIndex& n);

NormalityReport normality(const MeasureSystem& sys, const MultiIndex& n,
                          double eps_normal = defaults::eps_normal);

/// Monic type II solution: z^{|n|/2} + ... + kappa z^{-|n|/2}, orthogonal to
/// z^k, k = -n_j/2 .. n_j/2 - 1, against each measure.
HalfLaurentPoly solve_type2(const MeasureSystem& sys, const MultiIndex& n);

/// Same polynomial through the bordered-determinant formula (minors evaluated
/// by LU); verification path for solve_type2.
HalfLaurentPoly heine_type2(const MeasureSystem& sys, const MultiIndex& n);

/// Reversed solution with unit z^{-|n|/2} coefficient.
HalfLaurentPoly solve_type2_reversed(const MeasureSystem& sys, const MultiIndex& n);

/// Type I vector: component j supported on exponents -n_j/2 .. n_j/2 - 1, the
/// combined moments vanish except a unit condition at k = |n|/2 - 1.
TypeIVector solve_type1(const MeasureSystem& sys, const MultiIndex& n);

/// Reversed variant: support -n_j/2 + 1 .. n_j/2, unit condition at
/// k = -|n|/2 + 1.
TypeIVector solve_type1_reversed(const MeasureSystem& sys, const MultiIndex& n);

/// Coefficient matrix of solve_type1, ordered so it equals M_n transposed
/// entrywise.
ComplexMatrix type1_coefficient_matrix(const MeasureSystem& sys, const MultiIndex& n);

OmegaMatrix build_omega(const MeasureSystem& sys, const MultiIndex& n,
                        const MultiIndex& m);

NormalityReport laurent_normality(const MeasureSystem& sys, const MultiIndex& n,
                                  const MultiIndex& m,
                                  double eps_normal = defaults::eps_normal);

/// Two-sided monic type II Laurent polynomial z^{|n|} + ... + alpha z^{-|m|},
/// orthogonal to z^k for k = -m_j .. n_j - 1 against entry j.
HalfLaurentPoly solve_laurent_type2(const MeasureSystem& sys, const MultiIndex& n,
                                    const MultiIndex& m);

/// Star normalization: beta z^{|n|} + ... + z^{-|m|}, orthogonality window
/// k = -m_j + 1 .. n_j.
HalfLaurentPoly solve_laurent_type2_star(const MeasureSystem& sys, const MultiIndex& n,
                                         const MultiIndex& m);

/// Two-sided type I vector: component j in span z^{-m_j+1} .. z^{n_j},
/// combined moments vanish for k = -|m|+1 .. |n|-1 and the k = |n| moment is 1.
TypeIVector solve_laurent_type1(const MeasureSystem& sys, const MultiIndex& n,
                                const MultiIndex& m);

/// Star variant: support -m_j .. n_j-1, unit condition at k = -|m|.
TypeIVector solve_laurent_type1_star(const MeasureSystem& sys, const MultiIndex& n,
                                     const MultiIndex& m);

/// alpha_{n,m}: z^{-|m|} coefficient; beta_{n,m}: z^{|n|} coefficient.
inline Complex alpha_coefficient(const HalfLaurentPoly& phi, int m_total) {
  return phi.coeff(-2 * m_total);
}
inline Complex beta_coefficient(const HalfLaurentPoly& phi_star, int n_total) {
  return phi_star.coeff(2 * n_total);
}

/// Max orthogonality defect of a type II solution over its full window.
double type2_residual(const MeasureSystem& sys, const MultiIndex& n,
                      const HalfLaurentPoly& phi, bool reversed = false);
double laurent_type2_residual(const MeasureSystem& sys, const MultiIndex& n,
                              const MultiIndex& m, const HalfLaurentPoly& phi,
                              bool star = false);
double type1_residual(const MeasureSystem& sys, const MultiIndex& n,
                      const TypeIVector& xi, bool reversed = false);
double laurent_type1_residual(const MeasureSystem& sys, const MultiIndex& n,
                              const MultiIndex& m, const TypeIVector& lambda,
                              bool star = false);

/// Residual tolerance scaled by the solution's coefficient mass.
double residual_scale(const MeasureSystem& sys, double coeff_l1);

/// Memoizing front end over one system; thread-safe.
class LaurentSolver {
 public:
  explicit LaurentSolver(const MeasureSystem& sys,
                         double eps_normal = defaults::eps_normal)
      : sys_(sys), eps_(eps_normal) {}

  const MeasureSystem& system() const { return sys_; }
  double eps_normal() const { return eps_; }

  NormalityReport normality(const MultiIndex& n, const MultiIndex& m);
  bool is_normal(const MultiIndex& n, const MultiIndex& m);

  HalfLaurentPoly type2(const MultiIndex& n, const MultiIndex& m);
  HalfLaurentPoly type2_star(const MultiIndex& n, const MultiIndex& m);
  TypeIVector type1(const MultiIndex& n, const MultiIndex& m);
  TypeIVector type1_star(const MultiIndex& n, const MultiIndex& m);

 private:
  using Key = std::pair<std::vector<int>, std::vector<int>>;

  const MeasureSystem& sys_;
  double eps_;
  std::mutex mu_;
  std::map<Key, NormalityReport> normality_;
  std::map<Key, HalfLaurentPoly> type2_, type2_star_;
  std::map<Key, TypeIVector> type1_, type1_star_;
};

}  // namespace lmop

#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "lmop/error.hpp"

namespace lmop {

using Complex = std::complex<double>;

/// Which end of the fundamental angle interval is closed.
enum class ArcClosure { LeftClosed, RightClosed };

/// A fixed branch of z^{1/2} on the unit circle: angles are reduced into
/// [t0, t0+2pi) or (t0, t0+2pi] before halving.
struct BranchSpec {
  double t0 = 0.0;
  ArcClosure closure = ArcClosure::LeftClosed;

  /// Reduce an angle into the fundamental interval.
  double reduce(double theta) const;

  /// e^{i * (twice_exp/2) * theta}, with theta reduced first.  Integer powers
  /// (even twice_exp) do not depend on the branch.
  Complex power(int twice_exp, double theta) const;

  bool operator==(const BranchSpec& o) const {
    return t0 == o.t0 && closure == o.closure;
  }
};

/// Exponent on the half-integer grid; the actual power of z is twice/2.
struct HalfExp {
  int twice = 0;
  friend auto operator<=>(const HalfExp&, const HalfExp&) = default;
};

/// Finitely supported Laurent polynomial in z^{1/2}, restricted to exponents
/// of a single parity: either all integer powers or all strictly half-integer
/// powers.  Coefficients that are exactly zero are not stored.
class HalfLaurentPoly {
 public:
  HalfLaurentPoly() = default;
  explicit HalfLaurentPoly(BranchSpec branch) : branch_(branch) {}

  static HalfLaurentPoly monomial(int twice_exp, Complex coeff,
                                  BranchSpec branch = {});
  static HalfLaurentPoly one() { return monomial(0, 1.0); }

  bool is_zero() const { return coeffs_.empty(); }
  int min_twice_exp() const;
  int max_twice_exp() const;
  std::size_t term_count() const { return coeffs_.size(); }

  /// 0 = integer exponents, 1 = half-integer exponents, nullopt = zero poly.
  std::optional<int> parity() const;

  Complex coeff(int twice_exp) const;
  void set_coeff(int twice_exp, Complex value);

  const std::map<int, Complex>& terms() const { return coeffs_; }
  const BranchSpec& branch() const { return branch_; }
  void set_branch(BranchSpec b) { branch_ = b; }

  Complex eval(double theta) const { return eval(theta, branch_); }
  Complex eval(double theta, const BranchSpec& branch) const;

  /// f#(z) = conj(f(1/conj(z))): conjugate coefficients, negate exponents.
  HalfLaurentPoly sharp() const;

  HalfLaurentPoly operator+(const HalfLaurentPoly& rhs) const;
  HalfLaurentPoly operator-(const HalfLaurentPoly& rhs) const;
  HalfLaurentPoly operator*(const HalfLaurentPoly& rhs) const;
  HalfLaurentPoly scaled(Complex factor) const;
  HalfLaurentPoly mul_by_power(int twice_exp) const;

  /// Explicit near-zero trimming; canonical form otherwise only drops exact zeros.
  HalfLaurentPoly trimmed(double tol) const;

  double l1_norm() const;
  double max_abs_coeff() const;

  /// Max |coeff difference| against another polynomial.
  double max_coeff_distance(const HalfLaurentPoly& other) const;

 private:
  void check_parity_compatible(const HalfLaurentPoly& rhs) const;

  std::map<int, Complex> coeffs_;
  BranchSpec branch_;
};

/// Expand q(z + z^{-1}) for a real polynomial q (ascending coefficients) into
/// integer Laurent form; the result has symmetric coefficients.
HalfLaurentPoly compose_z_plus_inv(const std::vector<double>& q,
                                   BranchSpec branch = {});

}  // namespace lmop

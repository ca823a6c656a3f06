#pragma once

#include "lmop/measures.hpp"
#include "lmop/mop_engine.hpp"

namespace lmop {

/// Truncated formal expansions around 0 and around infinity, kept as two
/// independent tracks.  The track around 0 holds exact coefficients for
/// powers start0 .. start0 + K (lower powers are structural zeros); the track
/// around infinity holds powers start_inf down to start_inf - K.  Reading
/// past a track's window is a hard error rather than a zero-fill.
class TwoPointSeries {
 public:
  TwoPointSeries(int order, int start0, int start_inf)
      : order_(order), start0_(start0), start_inf_(start_inf),
        at0_(order + 1), at_inf_(order + 1) {}

  int order() const { return order_; }
  int start0() const { return start0_; }
  int start_inf() const { return start_inf_; }

  Complex coeff_at0(int power) const;
  Complex coeff_at_inf(int power) const;
  void set_at0(int power, Complex v);
  void set_at_inf(int power, Complex v);

  /// Largest |coefficient| over both stored tracks.
  double max_abs() const;

 private:
  int order_;
  int start0_;
  int start_inf_;
  std::vector<Complex> at0_;    // at0_[i] = coeff of z^{start0 + i}
  std::vector<Complex> at_inf_; // at_inf_[i] = coeff of z^{start_inf - i}
};

/// Carathéodory-type series of a measure (or functional): c_0 + 2 sum c_k z^k
/// at 0, -c_0 - 2 sum c_{-k} z^{-k} at infinity.
TwoPointSeries measure_series(const CircleMeasure& m, int order);
TwoPointSeries functional_series(const MomentFunctional& f, int order);
TwoPointSeries source_series(const MeasureSystem& sys, int j, int order);

/// Multiply an integer-exponent Laurent polynomial against both tracks; the
/// exact windows shift by the polynomial's lowest/highest degree.
TwoPointSeries multiply(const HalfLaurentPoly& p, const TwoPointSeries& s);

/// Truncation order that certifies every window of the (n, m) problems.
int auto_order(const MultiIndex& n, const MultiIndex& m);

struct ContactRow {
  int j = 0;                // measure index (type II) or 0 (type I)
  int required_at0 = 0;     // residual must be O(z^required_at0) at 0
  int achieved_at0 = 0;
  int required_at_inf = 0;  // residual must be O(z^-required_at_inf) at infinity
  int achieved_at_inf = 0;
  double max_violation = 0.0;
  bool pass = false;
};

struct ContactReport {
  std::vector<ContactRow> rows;
  std::vector<HalfLaurentPoly> interpolants;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Verify the two-sided type II interpolation: for each j extract the unique
/// interpolant of Phi * F_j from the non-vanishing windows and check that the
/// residual meets O(z^{n_j}) at 0 and O(z^{-m_j-1}) at infinity.  The star
/// variant uses the shifted windows O(z^{n_j+1}) / O(z^{-m_j}).
ContactReport type2_contact(const MeasureSystem& sys, const HalfLaurentPoly& phi,
                            const MultiIndex& n, const MultiIndex& m, bool star = false);

/// Verify the type I interpolation for the combined sum over j: the single
/// interpolant of sum_j Lambda_j F_j meets O(z^{|n|}) at 0 and O(z^{-|m|}) at
/// infinity.  The same windows apply to the star variant.
ContactReport type1_contact(const MeasureSystem& sys, const TypeIVector& lambda,
                            const MultiIndex& n, const MultiIndex& m);

/// Throwing wrapper: raises OrderViolation naming the first offending
/// coefficient when a report fails.
void require_contact(const ContactReport& report, const std::string& what);

/// Second-kind interpolant for the one-sided problem of an integer-exponent
/// polynomial against one measure, built from the coefficient recurrences
/// (the singular Carathéodory kernel is never evaluated).
HalfLaurentPoly second_kind(const HalfLaurentPoly& p, const CircleMeasure& mu);

}  // namespace lmop

#include "lmop/hermite_pade.hpp"

#include <algorithm>
#include <cmath>

namespace lmop {

Complex TwoPointSeries::coeff_at0(int power) const {
  if (power < start0_) return 0.0;
  if (power > start0_ + order_)
    fail(Errc::TruncationExceeded, "series read past truncation at 0");
  return at0_[power - start0_];
}

Complex TwoPointSeries::coeff_at_inf(int power) const {
  if (power > start_inf_) return 0.0;
  if (power < start_inf_ - order_)
    fail(Errc::TruncationExceeded, "series read past truncation at infinity");
  return at_inf_[start_inf_ - power];
}

void TwoPointSeries::set_at0(int power, Complex v) {
  if (power < start0_ || power > start0_ + order_)
    fail(Errc::TruncationExceeded, "series write outside the window at 0");
  at0_[power - start0_] = v;
}

void TwoPointSeries::set_at_inf(int power, Complex v) {
  if (power > start_inf_ || power < start_inf_ - order_)
    fail(Errc::TruncationExceeded, "series write outside the window at infinity");
  at_inf_[start_inf_ - power] = v;
}

double TwoPointSeries::max_abs() const {
  double s = 0.0;
  for (const Complex& c : at0_) s = std::max(s, std::abs(c));
  for (const Complex& c : at_inf_) s = std::max(s, std::abs(c));
  return s;
}

namespace {

template <typename MomFn>
TwoPointSeries series_impl(MomFn&& c, int order) {
  TwoPointSeries s(order, 0, 0);
  s.set_at0(0, c(0));
  s.set_at_inf(0, -c(0));
  for (int k = 1; k <= order; ++k) {
    s.set_at0(k, 2.0 * c(k));
    s.set_at_inf(-k, -2.0 * c(-k));
  }
  return s;
}

}  // namespace

TwoPointSeries measure_series(const CircleMeasure& m, int order) {
  return series_impl([&](int k) { return m.moment(k); }, order);
}

TwoPointSeries functional_series(const MomentFunctional& f, int order) {
  return series_impl([&](int k) { return f.moment(k); }, order);
}

TwoPointSeries source_series(const MeasureSystem& sys, int j, int order) {
  return series_impl([&](int k) { return sys.moment(j, k); }, order);
}

TwoPointSeries multiply(const HalfLaurentPoly& p, const TwoPointSeries& s) {
  if (p.is_zero()) return TwoPointSeries(s.order(), s.start0(), s.start_inf());
  if (p.parity() != 0)
    fail(Errc::ParityMismatch, "half-integer exponents cannot multiply a power series");
  const int lo = p.min_twice_exp() / 2;
  const int hi = p.max_twice_exp() / 2;
  TwoPointSeries out(s.order(), s.start0() + lo, s.start_inf() + hi);
  for (int q = out.start0(); q <= out.start0() + out.order(); ++q) {
    Complex acc = 0.0;
    for (const auto& [e, c] : p.terms()) acc += c * s.coeff_at0(q - e / 2);
    out.set_at0(q, acc);
  }
  for (int q = out.start_inf(); q >= out.start_inf() - out.order(); --q) {
    Complex acc = 0.0;
    for (const auto& [e, c] : p.terms()) acc += c * s.coeff_at_inf(q - e / 2);
    out.set_at_inf(q, acc);
  }
  return out;
}

int auto_order(const MultiIndex& n, const MultiIndex& m) {
  int widest = 0;
  for (int j = 0; j < n.r(); ++j) widest = std::max(widest, n[j] + m[j]);
  return n.total() + m.total() + widest + 2;
}

namespace {

TwoPointSeries add(const TwoPointSeries& a, const TwoPointSeries& b) {
  // Coefficients below a track's window are exact structural zeros, so the
  // summed window extends down to the smaller start; the exact upper ends are
  // capped by the shorter of the two.
  const int start0 = std::min(a.start0(), b.start0());
  const int end0 = std::min(a.start0() + a.order(), b.start0() + b.order());
  const int start_inf = std::max(a.start_inf(), b.start_inf());
  const int floor_inf = std::max(a.start_inf() - a.order(), b.start_inf() - b.order());
  const int order = std::min(end0 - start0, start_inf - floor_inf);
  if (order < 0) fail(Errc::TruncationExceeded, "series windows do not overlap");
  TwoPointSeries out(order, start0, start_inf);
  for (int q = start0; q <= start0 + order; ++q)
    out.set_at0(q, a.coeff_at0(q) + b.coeff_at0(q));
  for (int q = start_inf; q >= start_inf - order; --q)
    out.set_at_inf(q, a.coeff_at_inf(q) + b.coeff_at_inf(q));
  return out;
}

/// Split the combined series at power `split`: the interpolant takes the
/// 0-track below it and the infinity-track at or above it, then both residual
/// tracks are scanned for violations.
ContactRow check_windows(const TwoPointSeries& u, int split, int required_at0,
                         int required_at_inf, double tol, HalfLaurentPoly* interpolant,
                         BranchSpec branch) {
  HalfLaurentPoly psi(branch);
  for (int q = u.start0(); q < split; ++q) psi.set_coeff(2 * q, u.coeff_at0(q));
  for (int q = split; q <= u.start_inf(); ++q) psi.set_coeff(2 * q, u.coeff_at_inf(q));

  ContactRow row;
  row.required_at0 = required_at0;
  row.required_at_inf = required_at_inf;

  const int probe0_hi = std::min(required_at0 + 2, u.start0() + u.order());
  row.achieved_at0 = required_at0 + 3;
  bool found0 = false;
  for (int q = u.start0(); q <= probe0_hi; ++q) {
    const double v = std::abs(u.coeff_at0(q) - psi.coeff(2 * q));
    if (q < required_at0) row.max_violation = std::max(row.max_violation, v);
    if (v > tol && !found0) {
      row.achieved_at0 = q;
      found0 = true;
    }
  }

  const int probe_inf_lo = std::max(-(required_at_inf + 2), u.start_inf() - u.order());
  row.achieved_at_inf = required_at_inf + 3;
  bool found_inf = false;
  for (int q = u.start_inf(); q >= probe_inf_lo; --q) {
    const double v = std::abs(u.coeff_at_inf(q) - psi.coeff(2 * q));
    if (q > -required_at_inf) row.max_violation = std::max(row.max_violation, v);
    if (v > tol && !found_inf) {
      row.achieved_at_inf = -q;
      found_inf = true;
    }
  }

  row.pass = row.achieved_at0 >= required_at0 && row.achieved_at_inf >= required_at_inf;
  if (interpolant) *interpolant = std::move(psi);
  return row;
}

}  // namespace

ContactReport type2_contact(const MeasureSystem& sys, const HalfLaurentPoly& phi,
                            const MultiIndex& n, const MultiIndex& m, bool star) {
  const int order = auto_order(n, m);
  ContactReport report;
  report.pass = true;
  for (int j = 0; j < sys.r(); ++j) {
    const TwoPointSeries s = source_series(sys, j, order);
    const TwoPointSeries u = multiply(phi, s);
    const double tol =
        1e-9 * std::max(1.0, phi.l1_norm()) * std::max(1.0, s.max_abs());
    report.tolerance = std::max(report.tolerance, tol);
    const int split = star ? n[j] + 1 : n[j];
    const int at0 = star ? n[j] + 1 : n[j];
    const int at_inf = star ? m[j] : m[j] + 1;
    HalfLaurentPoly psi;
    ContactRow row = check_windows(u, split, at0, at_inf, tol, &psi, sys.branch());
    row.j = j;
    report.max_violation = std::max(report.max_violation, row.max_violation);
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
    report.interpolants.push_back(std::move(psi));
  }
  return report;
}

ContactReport type1_contact(const MeasureSystem& sys, const TypeIVector& lambda,
                            const MultiIndex& n, const MultiIndex& m) {
  if (static_cast<int>(lambda.components.size()) != sys.r())
    fail(Errc::DimensionMismatch, "one component per measure");
  const int order = auto_order(n, m);
  ContactReport report;

  bool have = false;
  double series_scale = 1.0;
  TwoPointSeries u(0, 0, 0);
  for (int j = 0; j < sys.r(); ++j) {
    const TwoPointSeries s = source_series(sys, j, order);
    series_scale = std::max(series_scale, s.max_abs());
    if (lambda.components[j].is_zero()) continue;
    const TwoPointSeries term = multiply(lambda.components[j], s);
    u = have ? add(u, term) : term;
    have = true;
  }
  if (!have) fail(Errc::Unsupported, "type I vector is identically zero");

  const double tol = 1e-9 * std::max(1.0, lambda.l1_norm()) * series_scale;
  report.tolerance = tol;
  HalfLaurentPoly xi;
  ContactRow row =
      check_windows(u, n.total(), n.total(), m.total(), tol, &xi, sys.branch());
  report.max_violation = row.max_violation;
  report.pass = row.pass;
  report.rows.push_back(row);
  report.interpolants.push_back(std::move(xi));
  return report;
}

void require_contact(const ContactReport& report, const std::string& what) {
  if (report.pass) return;
  for (const auto& row : report.rows) {
    if (row.pass) continue;
    fail(Errc::OrderViolation,
         what + ": measure " + std::to_string(row.j) + " achieved orders (" +
             std::to_string(row.achieved_at0) + ", " + std::to_string(row.achieved_at_inf) +
             ") short of (" + std::to_string(row.required_at0) + ", " +
             std::to_string(row.required_at_inf) + "), worst coefficient " +
             std::to_string(row.max_violation));
  }
}

HalfLaurentPoly second_kind(const HalfLaurentPoly& p, const CircleMeasure& mu) {
  if (!p.is_zero() && p.parity() != 0)
    fail(Errc::ParityMismatch, "second-kind interpolants need integer exponents");
  HalfLaurentPoly pi(mu.branch());
  if (p.is_zero()) return pi;
  const int lo = std::min(p.min_twice_exp() / 2, 0);
  const int hi = std::max(p.max_twice_exp() / 2, 0);

  auto kappa = [&](int t) { return p.coeff(2 * t); };
  // Polynomial part: -b_k with b_k = kappa_k + 2 c_{-1} kappa_{k+1} + ...
  for (int k = 0; k <= hi; ++k) {
    Complex acc = 0.0;
    for (int t = k; t <= hi; ++t)
      acc += (t == k ? 1.0 : 2.0) * mu.moment(k - t) * kappa(t);
    pi.set_coeff(2 * k, -acc);
  }
  // Principal part: a_k = kappa_k + 2 c_1 kappa_{k-1} + ...
  for (int k = lo; k <= -1; ++k) {
    Complex acc = 0.0;
    for (int t = lo; t <= k; ++t)
      acc += (t == k ? 1.0 : 2.0) * mu.moment(k - t) * kappa(t);
    pi.set_coeff(2 * k, acc);
  }
  return pi;
}

}  // namespace lmop

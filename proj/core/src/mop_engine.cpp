#include "lmop/mop_engine.hpp"

#include <cmath>
#include <limits>

namespace lmop {

TypeIVector TypeIVector::sharp() const {
  TypeIVector out;
  out.components.reserve(components.size());
  for (const auto& p : components) out.components.push_back(p.sharp());
  return out;
}

TypeIVector TypeIVector::mul_by_power(int twice_exp) const {
  TypeIVector out;
  out.components.reserve(components.size());
  for (const auto& p : components) out.components.push_back(p.mul_by_power(twice_exp));
  return out;
}

TypeIVector TypeIVector::operator+(const TypeIVector& rhs) const {
  if (components.size() != rhs.components.size())
    fail(Errc::DimensionMismatch, "type I vectors of different length");
  TypeIVector out;
  for (std::size_t j = 0; j < components.size(); ++j)
    out.components.push_back(components[j] + rhs.components[j]);
  return out;
}

TypeIVector TypeIVector::operator-(const TypeIVector& rhs) const {
  return *this + rhs.scaled(-1.0);
}

TypeIVector TypeIVector::scaled(Complex factor) const {
  TypeIVector out;
  for (const auto& p : components) out.components.push_back(p.scaled(factor));
  return out;
}

double TypeIVector::l1_norm() const {
  double s = 0.0;
  for (const auto& p : components) s += p.l1_norm();
  return s;
}

double TypeIVector::max_coeff_distance(const TypeIVector& other) const {
  if (components.size() != other.components.size())
    fail(Errc::DimensionMismatch, "type I vectors of different length");
  double d = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j)
    d = std::max(d, components[j].max_coeff_distance(other.components[j]));
  return d;
}

namespace {

void require_half_exponent_support(const MeasureSystem& sys, const MultiIndex& n) {
  if (sys.measure_backed()) return;
  if (n.total() % 2 != 0 || !n.all_even())
    fail(Errc::Unsupported,
         "functional-backed systems support only even multi-indices for the "
         "half-exponent problems");
}

NormalityReport report_from_matrix(const MeasureSystem& sys, const MultiIndex& n,
                                   const ComplexMatrix& a, double eps_normal) {
  NormalityReport rep;
  rep.sufficient_support = sys.sufficient_support(n);
  if (a.rows() == 0) {
    rep.det = 1.0;
    rep.sigma_min = std::numeric_limits<double>::infinity();
    rep.matrix_norm = 0.0;
    rep.normal = true;
    return rep;
  }
  rep.det = det(a);
  rep.sigma_min = smallest_singular_value_estimate(a);
  rep.matrix_norm = a.inf_norm();
  rep.normal = rep.matrix_norm > 0.0 && rep.sigma_min / rep.matrix_norm > eps_normal;
  return rep;
}

}  // namespace

MomentMatrix build_moment_matrix(const MeasureSystem& sys, const MultiIndex& n) {
  if (n.r() != sys.r()) fail(Errc::DimensionMismatch, "index length must match system size");
  require_half_exponent_support(sys, n);
  const int total = n.total();
  MomentMatrix out{n, ComplexMatrix(total, total), {}};
  int row = 0;
  for (int j = 0; j < sys.r(); ++j) {
    out.block_row_offsets.push_back(row);
    for (int k = 0; k < n[j]; ++k, ++row)
      for (int l = 0; l < total; ++l)
        out.mat(row, l) = sys.half_moment(j, (2 * l - total) + (n[j] - 2 * k));
  }
  return out;
}

NormalityReport normality(const MeasureSystem& sys, const MultiIndex& n,
                          double eps_normal) {
  if (n.is_zero()) {
    NormalityReport rep;
    rep.det = 1.0;
    rep.sigma_min = std::numeric_limits<double>::infinity();
    rep.normal = true;
    return rep;
  }
  return report_from_matrix(sys, n, build_moment_matrix(sys, n).mat, eps_normal);
}

HalfLaurentPoly solve_type2(const MeasureSystem& sys, const MultiIndex& n) {
  const int total = n.total();
  if (total == 0) return HalfLaurentPoly::monomial(0, 1.0, sys.branch());
  MomentMatrix m = build_moment_matrix(sys, n);
  std::vector<Complex> rhs(total);
  int row = 0;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = 0; k < n[j]; ++k, ++row)
      rhs[row] = -sys.half_moment(j, total + (n[j] - 2 * k));
  LuFactor lu(m.mat);
  if (lu.singular()) fail(Errc::NotNormal, "moment matrix is singular at " + n.str());
  std::vector<Complex> kappa = lu.solve(rhs);
  HalfLaurentPoly phi(sys.branch());
  phi.set_coeff(total, 1.0);
  for (int l = 0; l < total; ++l) phi.set_coeff(2 * l - total, kappa[l]);
  return phi;
}

HalfLaurentPoly heine_type2(const MeasureSystem& sys, const MultiIndex& n) {
  const int total = n.total();
  if (total == 0) return HalfLaurentPoly::monomial(0, 1.0, sys.branch());
  require_half_exponent_support(sys, n);

  // Bordered matrix: blocks widened by one column, symbolic bottom row
  // z^{-|n|/2} ... z^{|n|/2}.  Expanding along that row, the coefficient of
  // z^{l - |n|/2} is the signed minor with column l removed, over det M_n.
  ComplexMatrix wide(total, total + 1);
  int row = 0;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = 0; k < n[j]; ++k, ++row)
      for (int l = 0; l <= total; ++l)
        wide(row, l) = sys.half_moment(j, (2 * l - total) + (n[j] - 2 * k));

  const Complex det_m = det(wide.without_column(total));
  if (det_m == 0.0) fail(Errc::NotNormal, "moment matrix is singular at " + n.str());

  HalfLaurentPoly phi(sys.branch());
  for (int l = 0; l <= total; ++l) {
    const Complex minor = det(wide.without_column(l));
    const double sign = ((total + l) % 2 == 0) ? 1.0 : -1.0;
    phi.set_coeff(2 * l - total, sign * minor / det_m);
  }
  return phi;
}

HalfLaurentPoly solve_type2_reversed(const MeasureSystem& sys, const MultiIndex& n) {
  const int total = n.total();
  if (total == 0) return HalfLaurentPoly::monomial(0, 1.0, sys.branch());
  // Same coefficient matrix as build_moment_matrix; shifted exponent windows.
  MomentMatrix m = build_moment_matrix(sys, n);
  std::vector<Complex> rhs(total);
  int row = 0;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = 0; k < n[j]; ++k, ++row)
      rhs[row] = -sys.half_moment(j, -total + (n[j] - 2 - 2 * k));
  LuFactor lu(m.mat);
  if (lu.singular()) fail(Errc::NotNormal, "moment matrix is singular at " + n.str());
  std::vector<Complex> lambda = lu.solve(rhs);
  HalfLaurentPoly phi(sys.branch());
  phi.set_coeff(-total, 1.0);
  for (int l = 0; l < total; ++l) phi.set_coeff(2 * l - total + 2, lambda[l]);
  return phi;
}

ComplexMatrix type1_coefficient_matrix(const MeasureSystem& sys, const MultiIndex& n) {
  // Conditions ordered by descending k, unknowns by descending exponent within
  // each block; with this ordering the matrix equals M_n transposed entrywise.
  require_half_exponent_support(sys, n);
  const int total = n.total();
  ComplexMatrix a(total, total);
  for (int l = 0; l < total; ++l) {
    int col = 0;
    for (int j = 0; j < sys.r(); ++j)
      for (int i = 0; i < n[j]; ++i, ++col)
        a(l, col) = sys.half_moment(j, (2 * l - total) + (n[j] - 2 * i));
  }
  return a;
}

TypeIVector solve_type1(const MeasureSystem& sys, const MultiIndex& n) {
  if (n.is_zero())
    fail(Errc::NoTypeIAtZero, "type I vectors are not defined at the zero index");
  const int total = n.total();
  ComplexMatrix a = type1_coefficient_matrix(sys, n);
  std::vector<Complex> rhs(total, 0.0);
  rhs[0] = 1.0;  // row 0 is the k = |n|/2 - 1 condition
  LuFactor lu(a);
  if (lu.singular()) fail(Errc::NotNormal, "moment matrix is singular at " + n.str());
  std::vector<Complex> sol = lu.solve(rhs);
  TypeIVector xi;
  int col = 0;
  for (int j = 0; j < sys.r(); ++j) {
    HalfLaurentPoly p(sys.branch());
    for (int i = 0; i < n[j]; ++i, ++col) p.set_coeff(n[j] - 2 - 2 * i, sol[col]);
    xi.components.push_back(std::move(p));
  }
  return xi;
}

TypeIVector solve_type1_reversed(const MeasureSystem& sys, const MultiIndex& n) {
  if (n.is_zero())
    fail(Errc::NoTypeIAtZero, "type I vectors are not defined at the zero index");
  const int total = n.total();
  ComplexMatrix a = type1_coefficient_matrix(sys, n);
  std::vector<Complex> rhs(total, 0.0);
  rhs[total - 1] = 1.0;  // last row is the k = -|n|/2 + 1 condition
  LuFactor lu(a);
  if (lu.singular()) fail(Errc::NotNormal, "moment matrix is singular at " + n.str());
  std::vector<Complex> sol = lu.solve(rhs);
  TypeIVector xi;
  int col = 0;
  for (int j = 0; j < sys.r(); ++j) {
    HalfLaurentPoly p(sys.branch());
    for (int i = 0; i < n[j]; ++i, ++col) p.set_coeff(n[j] - 2 * i, sol[col]);
    xi.components.push_back(std::move(p));
  }
  return xi;
}

OmegaMatrix build_omega(const MeasureSystem& sys, const MultiIndex& n,
                        const MultiIndex& m) {
  if (n.r() != sys.r() || m.r() != sys.r())
    fail(Errc::DimensionMismatch, "index length must match system size");
  const int total = n.total() + m.total();
  OmegaMatrix out{n, m, ComplexMatrix(total, total), {}};
  int row = 0;
  for (int j = 0; j < sys.r(); ++j) {
    out.block_row_offsets.push_back(row);
    for (int k = -m[j]; k <= n[j] - 1; ++k, ++row)
      for (int l = 0; l < total; ++l) {
        const int e = l - m.total();
        out.mat(row, l) = sys.moment(j, k - e);
      }
  }
  return out;
}

NormalityReport laurent_normality(const MeasureSystem& sys, const MultiIndex& n,
                                  const MultiIndex& m, double eps_normal) {
  if (n.total() + m.total() == 0) {
    NormalityReport rep;
    rep.det = 1.0;
    rep.sigma_min = std::numeric_limits<double>::infinity();
    rep.normal = true;
    return rep;
  }
  MultiIndex combined = n;
  for (int j = 0; j < m.r(); ++j) combined.parts[j] += m[j];
  return report_from_matrix(sys, combined, build_omega(sys, n, m).mat, eps_normal);
}

HalfLaurentPoly solve_laurent_type2(const MeasureSystem& sys, const MultiIndex& n,
                                    const MultiIndex& m) {
  const int total = n.total() + m.total();
  if (total == 0) return HalfLaurentPoly::monomial(0, 1.0, sys.branch());
  OmegaMatrix om = build_omega(sys, n, m);
  std::vector<Complex> rhs(total);
  int row = 0;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = -m[j]; k <= n[j] - 1; ++k, ++row) rhs[row] = -sys.moment(j, k - n.total());
  LuFactor lu(om.mat);
  if (lu.singular())
    fail(Errc::NotLaurentNormal, "Omega is singular at " + n.str() + "," + m.str());
  std::vector<Complex> kappa = lu.solve(rhs);
  HalfLaurentPoly phi(sys.branch());
  phi.set_coeff(2 * n.total(), 1.0);
  for (int l = 0; l < total; ++l) phi.set_coeff(2 * (l - m.total()), kappa[l]);
  return phi;
}

HalfLaurentPoly solve_laurent_type2_star(const MeasureSystem& sys, const MultiIndex& n,
                                         const MultiIndex& m) {
  const int total = n.total() + m.total();
  if (total == 0) return HalfLaurentPoly::monomial(0, 1.0, sys.branch());
  OmegaMatrix om = build_omega(sys, n, m);
  std::vector<Complex> rhs(total);
  int row = 0;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = -m[j] + 1; k <= n[j]; ++k, ++row) rhs[row] = -sys.moment(j, k + m.total());
  LuFactor lu(om.mat);
  if (lu.singular())
    fail(Errc::NotLaurentNormal, "Omega is singular at " + n.str() + "," + m.str());
  std::vector<Complex> kappa = lu.solve(rhs);
  HalfLaurentPoly phi(sys.branch());
  phi.set_coeff(-2 * m.total(), 1.0);
  for (int l = 0; l < total; ++l) phi.set_coeff(2 * (l - m.total() + 1), kappa[l]);
  return phi;
}

namespace {

struct Type1Layout {
  // Unknown columns are (j, exponent e) pairs, e ascending within each block.
  std::vector<std::pair<int, int>> columns;
};

Type1Layout laurent_type1_layout(const MultiIndex& n, const MultiIndex& m, bool star) {
  Type1Layout layout;
  for (int j = 0; j < n.r(); ++j) {
    const int lo = star ? -m[j] : -m[j] + 1;
    const int hi = star ? n[j] - 1 : n[j];
    for (int e = lo; e <= hi; ++e) layout.columns.emplace_back(j, e);
  }
  return layout;
}

TypeIVector solve_laurent_type1_impl(const MeasureSystem& sys, const MultiIndex& n,
                                     const MultiIndex& m, bool star) {
  const int total = n.total() + m.total();
  if (total == 0)
    fail(Errc::NoTypeIAtZero, "two-sided type I vectors are not defined at (0, 0)");
  // Unique solvability is governed by the transposed problem at (m, n).
  NormalityReport swapped = laurent_normality(sys, m, n);
  if (!swapped.normal)
    fail(Errc::NotLaurentNormal,
         "type I problem needs (" + m.str() + "," + n.str() + ") Laurent-normal");

  const Type1Layout layout = laurent_type1_layout(n, m, star);
  ComplexMatrix a(total, total);
  std::vector<Complex> rhs(total, 0.0);
  int row = 0;
  for (int k = -m.total() + 1; k <= n.total() - 1; ++k, ++row)
    for (int c = 0; c < total; ++c) {
      const auto [j, e] = layout.columns[c];
      a(row, c) = sys.moment(j, k - e);
    }
  // Normalization condition.
  for (int c = 0; c < total; ++c) {
    const auto [j, e] = layout.columns[c];
    a(row, c) = star ? sys.moment(j, -m.total() - e) : sys.moment(j, n.total() - e);
  }
  rhs[row] = 1.0;

  LuFactor lu(a);
  if (lu.singular())
    fail(Errc::NotLaurentNormal, "type I system is singular at " + n.str() + "," + m.str());
  std::vector<Complex> sol = lu.solve(rhs);

  TypeIVector lambda;
  lambda.components.assign(sys.r(), HalfLaurentPoly(sys.branch()));
  for (int c = 0; c < total; ++c) {
    const auto [j, e] = layout.columns[c];
    lambda.components[j].set_coeff(2 * e, sol[c]);
  }
  return lambda;
}

}  // namespace

TypeIVector solve_laurent_type1(const MeasureSystem& sys, const MultiIndex& n,
                                const MultiIndex& m) {
  return solve_laurent_type1_impl(sys, n, m, false);
}

TypeIVector solve_laurent_type1_star(const MeasureSystem& sys, const MultiIndex& n,
                                     const MultiIndex& m) {
  return solve_laurent_type1_impl(sys, n, m, true);
}

double type2_residual(const MeasureSystem& sys, const MultiIndex& n,
                      const HalfLaurentPoly& phi, bool reversed) {
  double worst = 0.0;
  for (int j = 0; j < sys.r(); ++j)
    for (int i = 0; i < n[j]; ++i) {
      // twice_k runs over -n_j .. n_j-2 (plain) or -n_j+2 .. n_j (reversed).
      const int twice_k = reversed ? (-n[j] + 2 + 2 * i) : (-n[j] + 2 * i);
      Complex acc = 0.0;
      for (const auto& [e, c] : phi.terms()) acc += c * sys.half_moment(j, e - twice_k);
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

double laurent_type2_residual(const MeasureSystem& sys, const MultiIndex& n,
                              const MultiIndex& m, const HalfLaurentPoly& phi,
                              bool star) {
  if (!phi.is_zero() && phi.parity() != 0)
    fail(Errc::ParityMismatch, "two-sided residuals need integer exponents");
  double worst = 0.0;
  for (int j = 0; j < sys.r(); ++j) {
    const int klo = star ? -m[j] + 1 : -m[j];
    const int khi = star ? n[j] : n[j] - 1;
    for (int k = klo; k <= khi; ++k) {
      Complex acc = 0.0;
      for (const auto& [e, c] : phi.terms()) acc += c * sys.moment(j, k - e / 2);
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

double type1_residual(const MeasureSystem& sys, const MultiIndex& n,
                      const TypeIVector& xi, bool reversed) {
  const int total = n.total();
  double worst = 0.0;
  for (int i = 0; i < total; ++i) {
    const int twice_k = reversed ? (-total + 2 + 2 * i) : (-total + 2 * i);
    const int twice_unit = reversed ? (-total + 2) : (total - 2);
    Complex acc = 0.0;
    for (int j = 0; j < sys.r(); ++j)
      for (const auto& [e, c] : xi.components[j].terms())
        acc += c * sys.half_moment(j, e - twice_k);
    const Complex target = (twice_k == twice_unit) ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(acc - target));
  }
  return worst;
}

double laurent_type1_residual(const MeasureSystem& sys, const MultiIndex& n,
                              const MultiIndex& m, const TypeIVector& lambda,
                              bool star) {
  double worst = 0.0;
  for (int k = -m.total() + 1; k <= n.total() - 1; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < sys.r(); ++j)
      for (const auto& [e, c] : lambda.components[j].terms())
        acc += c * sys.moment(j, k - e / 2);
    worst = std::max(worst, std::abs(acc));
  }
  Complex norm_acc = 0.0;
  const int k_norm = star ? -m.total() : n.total();
  for (int j = 0; j < sys.r(); ++j)
    for (const auto& [e, c] : lambda.components[j].terms())
      norm_acc += c * sys.moment(j, k_norm - e / 2);
  worst = std::max(worst, std::abs(norm_acc - 1.0));
  return worst;
}

double residual_scale(const MeasureSystem& sys, double coeff_l1) {
  double mass = 1.0;
  for (int j = 0; j < sys.r(); ++j)
    if (sys.is_measure(j)) mass = std::max(mass, sys.measure(j).total_mass());
  return std::max(1.0, coeff_l1) * mass;
}

NormalityReport LaurentSolver::normality(const MultiIndex& n, const MultiIndex& m) {
  const Key key{n.parts, m.parts};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = normality_.find(key);
    if (it != normality_.end()) return it->second;
  }
  NormalityReport rep = lmop::laurent_normality(sys_, n, m, eps_);
  std::lock_guard<std::mutex> lock(mu_);
  return normality_.emplace(key, rep).first->second;
}

bool LaurentSolver::is_normal(const MultiIndex& n, const MultiIndex& m) {
  return normality(n, m).normal;
}

HalfLaurentPoly LaurentSolver::type2(const MultiIndex& n, const MultiIndex& m) {
  const Key key{n.parts, m.parts};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = type2_.find(key);
    if (it != type2_.end()) return it->second;
  }
  HalfLaurentPoly p = solve_laurent_type2(sys_, n, m);
  std::lock_guard<std::mutex> lock(mu_);
  return type2_.emplace(key, std::move(p)).first->second;
}

HalfLaurentPoly LaurentSolver::type2_star(const MultiIndex& n, const MultiIndex& m) {
  const Key key{n.parts, m.parts};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = type2_star_.find(key);
    if (it != type2_star_.end()) return it->second;
  }
  HalfLaurentPoly p = solve_laurent_type2_star(sys_, n, m);
  std::lock_guard<std::mutex> lock(mu_);
  return type2_star_.emplace(key, std::move(p)).first->second;
}

TypeIVector LaurentSolver::type1(const MultiIndex& n, const MultiIndex& m) {
  const Key key{n.parts, m.parts};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = type1_.find(key);
    if (it != type1_.end()) return it->second;
  }
  TypeIVector v = solve_laurent_type1(sys_, n, m);
  std::lock_guard<std::mutex> lock(mu_);
  return type1_.emplace(key, std::move(v)).first->second;
}

TypeIVector LaurentSolver::type1_star(const MultiIndex& n, const MultiIndex& m) {
  const Key key{n.parts, m.parts};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = type1_star_.find(key);
    if (it != type1_star_.end()) return it->second;
  }
  TypeIVector v = solve_laurent_type1_star(sys_, n, m);
  std::lock_guard<std::mutex> lock(mu_);
  return type1_star_.emplace(key, std::move(v)).first->second;
}

}  // namespace lmop

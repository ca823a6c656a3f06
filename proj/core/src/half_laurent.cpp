#include "lmop/half_laurent.hpp"

#include <cmath>
#include <numbers>

namespace lmop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double BranchSpec::reduce(double theta) const {
  double u = std::fmod(theta - t0, kTwoPi);
  if (u < 0.0) u += kTwoPi;
  // u in [0, 2pi); fmod may land exactly on 2pi after the correction.
  if (u >= kTwoPi) u = 0.0;
  if (closure == ArcClosure::RightClosed && u == 0.0) u = kTwoPi;
  return t0 + u;
}

Complex BranchSpec::power(int twice_exp, double theta) const {
  if (twice_exp % 2 == 0) return std::polar(1.0, 0.5 * twice_exp * theta);
  return std::polar(1.0, 0.5 * twice_exp * reduce(theta));
}

HalfLaurentPoly HalfLaurentPoly::monomial(int twice_exp, Complex coeff,
                                          BranchSpec branch) {
  HalfLaurentPoly p(branch);
  if (coeff != 0.0) p.coeffs_[twice_exp] = coeff;
  return p;
}

int HalfLaurentPoly::min_twice_exp() const {
  if (coeffs_.empty()) fail(Errc::Unsupported, "zero polynomial has no support");
  return coeffs_.begin()->first;
}

int HalfLaurentPoly::max_twice_exp() const {
  if (coeffs_.empty()) fail(Errc::Unsupported, "zero polynomial has no support");
  return coeffs_.rbegin()->first;
}

std::optional<int> HalfLaurentPoly::parity() const {
  if (coeffs_.empty()) return std::nullopt;
  return ((coeffs_.begin()->first % 2) + 2) % 2;
}

Complex HalfLaurentPoly::coeff(int twice_exp) const {
  auto it = coeffs_.find(twice_exp);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

void HalfLaurentPoly::set_coeff(int twice_exp, Complex value) {
  if (!coeffs_.empty()) {
    int p = ((coeffs_.begin()->first % 2) + 2) % 2;
    if (((twice_exp % 2) + 2) % 2 != p && value != 0.0)
      fail(Errc::ParityMismatch, "mixing integer and half-integer exponents");
  }
  if (value == 0.0)
    coeffs_.erase(twice_exp);
  else
    coeffs_[twice_exp] = value;
}

Complex HalfLaurentPoly::eval(double theta, const BranchSpec& branch) const {
  const double reduced = branch.reduce(theta);
  Complex acc = 0.0;
  for (const auto& [e, c] : coeffs_) acc += c * std::polar(1.0, 0.5 * e * reduced);
  return acc;
}

HalfLaurentPoly HalfLaurentPoly::sharp() const {
  HalfLaurentPoly out(branch_);
  for (const auto& [e, c] : coeffs_) out.coeffs_[-e] = std::conj(c);
  return out;
}

void HalfLaurentPoly::check_parity_compatible(const HalfLaurentPoly& rhs) const {
  auto a = parity();
  auto b = rhs.parity();
  if (a && b && *a != *b)
    fail(Errc::ParityMismatch, "mixing integer and half-integer exponents");
}

HalfLaurentPoly HalfLaurentPoly::operator+(const HalfLaurentPoly& rhs) const {
  check_parity_compatible(rhs);
  HalfLaurentPoly out = *this;
  for (const auto& [e, c] : rhs.coeffs_) {
    Complex v = out.coeff(e) + c;
    if (v == 0.0)
      out.coeffs_.erase(e);
    else
      out.coeffs_[e] = v;
  }
  return out;
}

HalfLaurentPoly HalfLaurentPoly::operator-(const HalfLaurentPoly& rhs) const {
  return *this + rhs.scaled(-1.0);
}

HalfLaurentPoly HalfLaurentPoly::operator*(const HalfLaurentPoly& rhs) const {
  HalfLaurentPoly out(branch_);
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : rhs.coeffs_) {
      Complex v = out.coeff(e1 + e2) + c1 * c2;
      if (v == 0.0)
        out.coeffs_.erase(e1 + e2);
      else
        out.coeffs_[e1 + e2] = v;
    }
  return out;
}

HalfLaurentPoly HalfLaurentPoly::scaled(Complex factor) const {
  HalfLaurentPoly out(branch_);
  if (factor == 0.0) return out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = factor * c;
  return out;
}

HalfLaurentPoly HalfLaurentPoly::mul_by_power(int twice_exp) const {
  HalfLaurentPoly out(branch_);
  for (const auto& [e, c] : coeffs_) out.coeffs_[e + twice_exp] = c;
  return out;
}

HalfLaurentPoly HalfLaurentPoly::trimmed(double tol) const {
  HalfLaurentPoly out(branch_);
  for (const auto& [e, c] : coeffs_)
    if (std::abs(c) > tol) out.coeffs_[e] = c;
  return out;
}

double HalfLaurentPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : coeffs_) s += std::abs(c);
  return s;
}

double HalfLaurentPoly::max_abs_coeff() const {
  double s = 0.0;
  for (const auto& [e, c] : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double HalfLaurentPoly::max_coeff_distance(const HalfLaurentPoly& other) const {
  double d = 0.0;
  for (const auto& [e, c] : coeffs_) d = std::max(d, std::abs(c - other.coeff(e)));
  for (const auto& [e, c] : other.coeffs_) d = std::max(d, std::abs(coeff(e) - c));
  return d;
}

HalfLaurentPoly compose_z_plus_inv(const std::vector<double>& q, BranchSpec branch) {
  // (z + 1/z)^d = sum_i binom(d,i) z^{d-2i}; accumulate per degree.
  HalfLaurentPoly out(branch);
  for (std::size_t d = 0; d < q.size(); ++d) {
    if (q[d] == 0.0) continue;
    double binom = 1.0;
    for (std::size_t i = 0; i <= d; ++i) {
      int e = 2 * (static_cast<int>(d) - 2 * static_cast<int>(i));
      out.set_coeff(e, out.coeff(e) + q[d] * binom);
      binom = binom * static_cast<double>(d - i) / static_cast<double>(i + 1);
    }
  }
  return out;
}

}  // namespace lmop

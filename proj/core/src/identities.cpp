#include "lmop/identities.hpp"

#include <cmath>

namespace lmop {

namespace {

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Iterate over all tuples in {0..base-1}^len.
class TupleCounter {
 public:
  TupleCounter(int base, int len) : base_(base), digits_(len, 0) {}
  const std::vector<int>& digits() const { return digits_; }
  bool advance() {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (++digits_[i] < base_) return true;
      digits_[i] = 0;
    }
    return false;
  }

 private:
  int base_;
  std::vector<int> digits_;
};

}  // namespace

Complex andreief_lhs(const AndreiefInstance& inst) {
  const int m = inst.m();
  const int n = inst.n();
  if (m < 1 || n < m) fail(Errc::Unsupported, "need N >= M >= 1");
  if (inst.a_block.rows() != n - m || (n > m && inst.a_block.cols() != n))
    fail(Errc::DimensionMismatch, "A must be (N-M) x N");
  ComplexMatrix full(n, n);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (int a = 0; a < inst.p(); ++a)
        acc += inst.weights[a] * inst.f_values(j, a) * inst.g_values(k, a);
      full(j, k) = acc;
    }
  for (int j = m; j < n; ++j)
    for (int k = 0; k < n; ++k) full(j, k) = inst.a_block(j - m, k);
  return det(full);
}

Complex andreief_rhs(const AndreiefInstance& inst) {
  const int m = inst.m();
  const int n = inst.n();
  const int p = inst.p();
  if (m < 1 || n < m) fail(Errc::Unsupported, "need N >= M >= 1");
  if (m > 6 || n > 6 || p > 8)
    fail(Errc::TooLarge, "brute-force Andreief sum limited to M <= N <= 6 with <= 8 atoms");

  Complex total = 0.0;
  TupleCounter tuple(p, m);
  do {
    const auto& idx = tuple.digits();
    double w = 1.0;
    for (int j = 0; j < m; ++j) w *= inst.weights[idx[j]];

    ComplexMatrix top(n, n);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) top(j, k) = inst.g_values(k, idx[j]);
    for (int j = m; j < n; ++j)
      for (int k = 0; k < n; ++k) top(j, k) = inst.a_block(j - m, k);

    ComplexMatrix fm(m, m);
    for (int l = 0; l < m; ++l)
      for (int j = 0; j < m; ++j) fm(l, j) = inst.f_values(l, idx[j]);

    total += w * det(top) * det(fm);
  } while (tuple.advance());
  return total / factorial(m);
}

Complex vandermonde_value(const std::vector<double>& thetas, const BranchSpec& branch) {
  // prod_j z_j^{-(N-1)/2} * prod_{j<k} (z_k - z_j), with branch-consistent
  // half powers.
  const int n = static_cast<int>(thetas.size());
  Complex prefactor = 1.0;
  for (double t : thetas) prefactor *= branch.power(-(n - 1), t);
  Complex vand = 1.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      vand *= std::polar(1.0, branch.reduce(thetas[k])) -
              std::polar(1.0, branch.reduce(thetas[j]));
  return prefactor * vand;
}

VandermondeForms unit_circle_vandermonde(const std::vector<double>& thetas,
                                         const BranchSpec& branch) {
  const int n = static_cast<int>(thetas.size());
  for (double t : thetas)
    if (std::abs(branch.reduce(t) - t) > 1e-12)
      fail(Errc::UnorderedInput, "angles must be given inside the branch interval");
  for (int j = 1; j < n; ++j)
    if (thetas[j] < thetas[j - 1])
      fail(Errc::UnorderedInput, "the modulus form needs nondecreasing angles");

  VandermondeForms out;
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) a(j, l) = branch.power(-(n - 1) + 2 * l, thetas[j]);
  out.determinant = n == 0 ? Complex(1.0) : det(a);

  double sines = 1.0;
  double moduli = 1.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      sines *= std::sin(0.5 * (thetas[k] - thetas[j]));
      moduli *= std::abs(std::polar(1.0, thetas[k]) - std::polar(1.0, thetas[j]));
    }
  const int half = n * (n - 1) / 2;
  Complex two_i_pow = 1.0;
  for (int i = 0; i < half; ++i) two_i_pow *= Complex(0.0, 2.0);
  out.sine_product = two_i_pow * sines;
  out.modulus_product = i_power(half) * moduli;
  return out;
}

int angelesco_sign_exponent(const MultiIndex& n) {
  int k = 0;
  for (int j = 0; j < n.r(); ++j) k += n[j] * (n[j] - 1) / 2;
  return k;
}

int angelesco_phase_exponent(const MultiIndex& n) {
  const int total = n.total();
  return total * (total - 1) / 2 + angelesco_sign_exponent(n);
}

Complex angelesco_det_sum(const MeasureSystem& sys, const MultiIndex& n) {
  if (n.r() != sys.r()) fail(Errc::DimensionMismatch, "index length must match system size");
  const int total = n.total();
  if (total > 5) fail(Errc::TooLarge, "determinant-integral sum limited to |n| <= 5");
  std::vector<std::vector<CircleAtom>> pts(sys.r());
  for (int j = 0; j < sys.r(); ++j) {
    if (!sys.is_measure(j) || !sys.measure(j).atoms_only())
      fail(Errc::Unsupported, "determinant-integral check needs atoms-only measures");
    pts[j] = sys.measure(j).atoms();
    if (n[j] > 0 && static_cast<int>(pts[j].size()) > 8)
      fail(Errc::TooLarge, "determinant-integral sum limited to 8 atoms per measure");
  }
  if (total == 0) return 1.0;

  const BranchSpec& branch = sys.branch();

  // One flat counter over the concatenated tuple (n_1 picks from measure 1,
  // then n_2 from measure 2, ...).
  std::vector<int> owner;
  for (int j = 0; j < sys.r(); ++j)
    for (int i = 0; i < n[j]; ++i) owner.push_back(j);

  std::vector<int> digits(total, 0);
  Complex sum = 0.0;
  for (;;) {
    double w = 1.0;
    std::vector<double> all(total);
    for (int i = 0; i < total; ++i) {
      const CircleAtom& a = pts[owner[i]][digits[i]];
      w *= a.weight;
      all[i] = a.theta;
    }
    Complex term = vandermonde_value(all, branch);
    int offset = 0;
    for (int j = 0; j < sys.r(); ++j) {
      std::vector<double> block(all.begin() + offset, all.begin() + offset + n[j]);
      term *= vandermonde_value(block, branch);
      offset += n[j];
    }
    sum += w * term;

    int i = 0;
    for (; i < total; ++i) {
      if (++digits[i] < static_cast<int>(pts[owner[i]].size())) break;
      digits[i] = 0;
    }
    if (i == total) break;
  }

  double prefactor = 1.0;
  for (int j = 0; j < sys.r(); ++j) prefactor /= factorial(n[j]);
  const double sign = angelesco_sign_exponent(n) % 2 == 0 ? 1.0 : -1.0;
  return sign * prefactor * sum;
}

}  // namespace lmop

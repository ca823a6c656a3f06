#pragma once

#include "lmop/linalg.hpp"
#include "lmop/measures.hpp"

namespace lmop {

/// Instance of the generalized Andreief identity over a finite atomic measure:
/// f and g are given by their sampled values on the atoms, A is the appended
/// constant block.
struct AndreiefInstance {
  std::vector<double> weights;  // atom weights, size P
  ComplexMatrix f_values;       // M x P
  ComplexMatrix g_values;       // N x P
  ComplexMatrix a_block;        // (N - M) x N

  int m() const { return f_values.rows(); }
  int n() const { return g_values.rows(); }
  int p() const { return static_cast<int>(weights.size()); }
};

/// det of the bordered moment matrix [ (int f_j g_k dmu) ; A ].
Complex andreief_lhs(const AndreiefInstance& inst);

/// The M-fold sum over atom tuples of det[(g_k(x_j)); A] * det(f_l(x_j)) / M!.
/// Throws TooLarge beyond M <= N <= 6, P <= 8.
Complex andreief_rhs(const AndreiefInstance& inst);

struct VandermondeForms {
  Complex determinant;      // det of the half-power matrix
  Complex sine_product;     // (2i)^{N(N-1)/2} prod sin((theta_k - theta_j)/2)
  Complex modulus_product;  // i^{N(N-1)/2} prod |z_k - z_j| (ordered input only)
};

/// All three evaluations of the unit-circle Vandermonde determinant; angles
/// must lie in the branch interval, and must be nondecreasing (UnorderedInput
/// otherwise, since the modulus form needs nonnegative sines).
VandermondeForms unit_circle_vandermonde(const std::vector<double>& thetas,
                                         const BranchSpec& branch);

/// Plain numeric Vandermonde value (branch-consistent product form), usable
/// at unordered tuples.
Complex vandermonde_value(const std::vector<double>& thetas, const BranchSpec& branch);

/// Right side of the determinant-integral formula for det M_n over an
/// atoms-only system: the multi-fold sum of V_{|n|} * prod_j V_{n_j} with the
/// (-1)^{k_n} / prod n_j! prefactor.  Throws TooLarge past |n| <= 5 with more
/// than 8 atoms in some measure.
Complex angelesco_det_sum(const MeasureSystem& sys, const MultiIndex& n);

/// Exponent of the sign prefactor: k_n = sum n_j (n_j - 1) / 2.
int angelesco_sign_exponent(const MultiIndex& n);

/// l_n = |n|(|n|-1)/2 + sum n_j(n_j-1)/2; i^{-l_n} times the ordered-region
/// integrand is nonnegative.
int angelesco_phase_exponent(const MultiIndex& n);

}  // namespace lmop

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "lmop/half_laurent.hpp"
#include "lmop/multi_index.hpp"

namespace lmop {

struct CircleAtom {
  double theta = 0.0;
  double weight = 0.0;
};

/// Quadrature-discretized weighted arc; nodes carry density * quadrature weight.
struct CircleArc {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<CircleAtom> nodes;
};

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int q, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Measure on the unit circle given as point masses plus discretized arcs.
/// Angles are stored reduced into the branch interval.
class CircleMeasure {
 public:
  static CircleMeasure from_atoms(std::vector<CircleAtom> atoms, BranchSpec branch = {},
                                  bool normalize = true);
  static CircleMeasure from_arc(double alpha, double beta,
                                const std::function<double(double)>& density,
                                int quad_nodes, BranchSpec branch = {},
                                bool normalize = true);
  /// Normalized arc-length measure dtheta / 2pi over the whole circle.
  static CircleMeasure lebesgue(BranchSpec branch = {}, int quad_nodes = 200);

  /// Combine parts (atoms and arcs) into one measure.
  static CircleMeasure combine(const std::vector<CircleMeasure>& parts,
                               bool normalize = true);

  const BranchSpec& branch() const { return branch_; }
  double total_mass() const { return total_mass_; }
  const std::vector<CircleAtom>& atoms() const { return atoms_; }
  const std::vector<CircleArc>& arcs() const { return arcs_; }
  bool atoms_only() const { return arcs_.empty(); }

  /// All support points (atoms plus quadrature nodes) with their weights.
  std::vector<CircleAtom> support_points() const;
  int support_size() const;

  /// Integral of z^{twice_exp/2} over the measure, with the stored branch.
  Complex half_moment(int twice_exp) const;

  /// c_k = integral of z^{-k}.
  Complex moment(int k) const { return half_moment(-2 * k); }

  /// Integral of a Laurent polynomial in z^{1/2}.
  Complex integrate(const HalfLaurentPoly& p) const;

  /// Invariance under conjugation theta -> -theta, tested on the support.
  bool conjugation_symmetric(double tol = 1e-12) const;

  CircleMeasure scaled(double factor) const;

 private:
  std::vector<CircleAtom> atoms_;
  std::vector<CircleArc> arcs_;
  BranchSpec branch_;
  double total_mass_ = 0.0;

  void recompute_mass();
};

/// Formal moment functional: integer moments c_k, |k| <= k_max only.
class MomentFunctional {
 public:
  MomentFunctional() = default;
  MomentFunctional(std::map<int, Complex> c, int k_max) : c_(std::move(c)), k_max_(k_max) {}

  int k_max() const { return k_max_; }
  Complex moment(int k) const;

 private:
  std::map<int, Complex> c_;
  int k_max_ = 0;
};

using MeasureSource = std::variant<CircleMeasure, MomentFunctional>;

/// Ordered system of r measures (or raw functionals) sharing one branch.
class MeasureSystem {
 public:
  MeasureSystem(std::vector<MeasureSource> entries, BranchSpec branch);

  int r() const { return static_cast<int>(entries_.size()); }
  const BranchSpec& branch() const { return branch_; }
  const MeasureSource& entry(int j) const { return entries_[j]; }

  bool measure_backed() const;
  bool is_measure(int j) const;
  const CircleMeasure& measure(int j) const;
  const MomentFunctional& functional(int j) const;

  /// Half-integer moment of entry j; Unsupported for functionals with odd p.
  Complex half_moment(int j, int twice_exp) const;
  Complex moment(int j, int k) const;
  Complex integrate(int j, const HalfLaurentPoly& p) const;

  int support_size(int j) const;

  /// Finite surrogate for "infinite support": every entry has at least
  /// |n| distinct support points (functionals pass vacuously).
  bool sufficient_support(const MultiIndex& n) const;

  bool flagged_angelesco() const { return angelesco_; }
  void flag_angelesco() { angelesco_ = true; }

 private:
  std::vector<MeasureSource> entries_;
  BranchSpec branch_;
  bool angelesco_ = false;
};

/// Carathéodory coefficient pair: expansions of F(z) = int (w+z)/(w-z) dmu(w)
/// around 0 (powers z^0..z^K) and around infinity (powers z^0..z^{-K}).
struct CaratheodoryCoeffs {
  std::vector<Complex> at0;
  std::vector<Complex> at_inf;
};

CaratheodoryCoeffs caratheodory_coeffs(const CircleMeasure& m, int order);
CaratheodoryCoeffs caratheodory_coeffs(const MomentFunctional& m, int order);

/// One arc of an Angelesco construction: endpoints in the branch's reduced
/// coordinates plus atoms and/or a density to be discretized.
struct AngelescoArc {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<CircleAtom> atoms;
  std::function<double(double)> density;  // optional
  int quad_nodes = 0;
};

/// Build a system of measures supported on ordered arcs with pairwise
/// essentially disjoint interiors.
MeasureSystem build_angelesco(const std::vector<AngelescoArc>& arcs, BranchSpec branch,
                              bool normalize = true);

struct ChebyshevCertificate {
  int dimension = 0;
  int samples = 0;
  double min_abs_det = 0.0;
  int sign = 0;
};

struct ATSystem {
  MeasureSystem system;
  ChebyshevCertificate certificate;
};

/// Build mu_j = w_j dmu on a common arc and certify, by sampling, that the
/// associated trigonometric family for the index n is a Chebyshev system.
/// Throws ChebyshevSampleFailure if any sampled determinant vanishes or the
/// sign is not constant.
ATSystem build_at_system(const CircleMeasure& base,
                         const std::vector<std::function<double(double)>>& weights,
                         const MultiIndex& n, int samples = 64, std::uint64_t seed = 0);

struct RealAtom {
  double x = 0.0;
  double weight = 0.0;
};

/// Discrete (or quadrature-discretized) measure on [-2, 2].
class RealMeasure {
 public:
  static RealMeasure from_atoms(std::vector<RealAtom> atoms, bool normalize = true);
  static RealMeasure from_density(double a, double b,
                                  const std::function<double(double)>& density,
                                  int quad_nodes, bool normalize = true);

  const std::vector<RealAtom>& atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  double moment(int k) const;
  double integrate_poly(const std::vector<double>& coeffs) const;
  int support_size() const;

 private:
  std::vector<RealAtom> atoms_;
  double total_mass_ = 0.0;
};

using RealSystem = std::vector<RealMeasure>;

/// Push a measure on [-2,2] to a conjugation-symmetric measure on the circle
/// via x = 2 cos(theta).
CircleMeasure szego_map(const RealMeasure& g, BranchSpec branch = {});

MeasureSystem szego_map(const RealSystem& gammas, BranchSpec branch = {});

}  // namespace lmop

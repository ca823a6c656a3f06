#include "lmop/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lmop/linalg.hpp"

namespace lmop {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

void gauss_legendre(int q, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (q < 1) fail(Errc::Unsupported, "quadrature needs at least one node");
  nodes.assign(q, 0.0);
  weights.assign(q, 0.0);
  const int m = (q + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_q(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[q - 1 - i] = x;
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < q; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

void CircleMeasure::recompute_mass() {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  for (const auto& arc : arcs_)
    for (const auto& n : arc.nodes) m += n.weight;
  total_mass_ = m;
}

CircleMeasure CircleMeasure::from_atoms(std::vector<CircleAtom> atoms, BranchSpec branch,
                                        bool normalize) {
  CircleMeasure m;
  m.branch_ = branch;
  for (auto& a : atoms) {
    if (!(a.weight > 0.0)) fail(Errc::Unsupported, "atom weights must be positive");
    a.theta = branch.reduce(a.theta);
  }
  m.atoms_ = std::move(atoms);
  m.recompute_mass();
  if (normalize && m.total_mass_ > 0.0) return m.scaled(1.0 / m.total_mass_);
  return m;
}

CircleMeasure CircleMeasure::from_arc(double alpha, double beta,
                                      const std::function<double(double)>& density,
                                      int quad_nodes, BranchSpec branch, bool normalize) {
  if (!(beta > alpha) || beta - alpha > kTwoPi + 1e-12)
    fail(Errc::Unsupported, "arc must have positive length at most 2*pi");
  std::vector<double> xs, ws;
  gauss_legendre(quad_nodes, alpha, beta, xs, ws);
  CircleArc arc;
  arc.alpha = alpha;
  arc.beta = beta;
  arc.nodes.reserve(quad_nodes);
  for (int i = 0; i < quad_nodes; ++i) {
    double w = density(xs[i]) * ws[i];
    if (w < 0.0) fail(Errc::Unsupported, "arc density must be nonnegative");
    arc.nodes.push_back({branch.reduce(xs[i]), w});
  }
  CircleMeasure m;
  m.branch_ = branch;
  m.arcs_.push_back(std::move(arc));
  m.recompute_mass();
  if (normalize && m.total_mass_ > 0.0) return m.scaled(1.0 / m.total_mass_);
  return m;
}

CircleMeasure CircleMeasure::lebesgue(BranchSpec branch, int quad_nodes) {
  return from_arc(
      branch.t0, branch.t0 + kTwoPi, [](double) { return 1.0 / kTwoPi; }, quad_nodes,
      branch, true);
}

CircleMeasure CircleMeasure::combine(const std::vector<CircleMeasure>& parts,
                                     bool normalize) {
  if (parts.empty()) fail(Errc::Unsupported, "cannot combine zero measures");
  CircleMeasure m;
  m.branch_ = parts.front().branch_;
  for (const auto& p : parts) {
    if (!(p.branch_ == m.branch_)) fail(Errc::Unsupported, "combined parts must share a branch");
    m.atoms_.insert(m.atoms_.end(), p.atoms_.begin(), p.atoms_.end());
    m.arcs_.insert(m.arcs_.end(), p.arcs_.begin(), p.arcs_.end());
  }
  m.recompute_mass();
  if (normalize && m.total_mass_ > 0.0) return m.scaled(1.0 / m.total_mass_);
  return m;
}

CircleMeasure CircleMeasure::scaled(double factor) const {
  CircleMeasure m = *this;
  for (auto& a : m.atoms_) a.weight *= factor;
  for (auto& arc : m.arcs_)
    for (auto& n : arc.nodes) n.weight *= factor;
  m.recompute_mass();
  return m;
}

std::vector<CircleAtom> CircleMeasure::support_points() const {
  std::vector<CircleAtom> pts = atoms_;
  for (const auto& arc : arcs_) pts.insert(pts.end(), arc.nodes.begin(), arc.nodes.end());
  return pts;
}

int CircleMeasure::support_size() const {
  std::vector<double> thetas;
  for (const auto& p : support_points()) thetas.push_back(p.theta);
  std::sort(thetas.begin(), thetas.end());
  int count = 0;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    if (i == 0 || thetas[i] - thetas[i - 1] > 1e-12) ++count;
  return count;
}

Complex CircleMeasure::half_moment(int twice_exp) const {
  Complex acc = 0.0;
  for (const auto& a : atoms_) acc += a.weight * branch_.power(twice_exp, a.theta);
  for (const auto& arc : arcs_)
    for (const auto& n : arc.nodes) acc += n.weight * branch_.power(twice_exp, n.theta);
  return acc;
}

Complex CircleMeasure::integrate(const HalfLaurentPoly& p) const {
  Complex acc = 0.0;
  for (const auto& a : atoms_) acc += a.weight * p.eval(a.theta, branch_);
  for (const auto& arc : arcs_)
    for (const auto& n : arc.nodes) acc += n.weight * p.eval(n.theta, branch_);
  return acc;
}

bool CircleMeasure::conjugation_symmetric(double tol) const {
  auto pts = support_points();
  std::sort(pts.begin(), pts.end(),
            [](const CircleAtom& a, const CircleAtom& b) { return a.theta < b.theta; });
  for (const auto& p : pts) {
    const double mirror = branch_.reduce(-p.theta);
    // Find a support point at the mirrored angle carrying the same weight.
    double found = 0.0;
    for (const auto& q : pts) {
      if (std::abs(q.theta - mirror) <= tol) found += q.weight;
      if (q.theta > mirror + tol) break;
    }
    if (std::abs(found - p.weight) > tol * std::max(1.0, total_mass_)) return false;
  }
  return true;
}

Complex MomentFunctional::moment(int k) const {
  if (std::abs(k) > k_max_)
    fail(Errc::TruncationExceeded,
         "moment index " + std::to_string(k) + " beyond truncation " + std::to_string(k_max_));
  auto it = c_.find(k);
  return it == c_.end() ? Complex(0.0) : it->second;
}

MeasureSystem::MeasureSystem(std::vector<MeasureSource> entries, BranchSpec branch)
    : entries_(std::move(entries)), branch_(branch) {
  if (entries_.empty()) fail(Errc::Unsupported, "a measure system needs r >= 1 entries");
  for (const auto& e : entries_)
    if (const auto* m = std::get_if<CircleMeasure>(&e))
      if (!(m->branch() == branch_))
        fail(Errc::Unsupported, "all measures in a system must share the system branch");
}

bool MeasureSystem::measure_backed() const {
  for (const auto& e : entries_)
    if (!std::holds_alternative<CircleMeasure>(e)) return false;
  return true;
}

bool MeasureSystem::is_measure(int j) const {
  return std::holds_alternative<CircleMeasure>(entries_[j]);
}

const CircleMeasure& MeasureSystem::measure(int j) const {
  if (!is_measure(j)) fail(Errc::Unsupported, "entry is a moment functional, not a measure");
  return std::get<CircleMeasure>(entries_[j]);
}

const MomentFunctional& MeasureSystem::functional(int j) const {
  if (is_measure(j)) fail(Errc::Unsupported, "entry is a measure, not a functional");
  return std::get<MomentFunctional>(entries_[j]);
}

Complex MeasureSystem::half_moment(int j, int twice_exp) const {
  if (is_measure(j)) return measure(j).half_moment(twice_exp);
  if (twice_exp % 2 != 0)
    fail(Errc::Unsupported, "functionals define integer moments only");
  return functional(j).moment(-twice_exp / 2);
}

Complex MeasureSystem::moment(int j, int k) const { return half_moment(j, -2 * k); }

Complex MeasureSystem::integrate(int j, const HalfLaurentPoly& p) const {
  if (is_measure(j)) return measure(j).integrate(p);
  Complex acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += c * half_moment(j, e);
  return acc;
}

int MeasureSystem::support_size(int j) const {
  return is_measure(j) ? measure(j).support_size() : -1;
}

bool MeasureSystem::sufficient_support(const MultiIndex& n) const {
  for (int j = 0; j < r(); ++j) {
    if (!is_measure(j)) continue;
    if (support_size(j) < n.total()) return false;
  }
  return true;
}

namespace {

template <typename MomFn>
CaratheodoryCoeffs caratheodory_impl(MomFn&& c, int order) {
  CaratheodoryCoeffs out;
  out.at0.resize(order + 1);
  out.at_inf.resize(order + 1);
  out.at0[0] = c(0);
  out.at_inf[0] = -c(0);
  for (int k = 1; k <= order; ++k) {
    out.at0[k] = 2.0 * c(k);
    out.at_inf[k] = -2.0 * c(-k);
  }
  return out;
}

}  // namespace

CaratheodoryCoeffs caratheodory_coeffs(const CircleMeasure& m, int order) {
  return caratheodory_impl([&](int k) { return m.moment(k); }, order);
}

CaratheodoryCoeffs caratheodory_coeffs(const MomentFunctional& m, int order) {
  return caratheodory_impl([&](int k) { return m.moment(k); }, order);
}

MeasureSystem build_angelesco(const std::vector<AngelescoArc>& arcs, BranchSpec branch,
                              bool normalize) {
  if (arcs.empty()) fail(Errc::Unsupported, "need at least one arc");
  const double lo = branch.t0;
  const double hi = branch.t0 + kTwoPi;
  double prev_end = lo;
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const auto& a = arcs[j];
    if (a.alpha < lo - 1e-12 || a.beta > hi + 1e-12 || a.alpha > a.beta)
      fail(Errc::OverlappingArcs, "arc endpoints must be ordered within [t0, t0+2pi]");
    if (a.alpha < prev_end - 1e-12)
      fail(Errc::OverlappingArcs, "arcs " + std::to_string(j) + " and " + std::to_string(j - 1) +
                                      " overlap on a set of positive measure");
    prev_end = a.beta;
  }

  const int r = static_cast<int>(arcs.size());
  std::vector<MeasureSource> entries;
  for (int j = 0; j < r; ++j) {
    const auto& a = arcs[j];
    std::vector<CircleMeasure> parts;
    if (!a.atoms.empty()) {
      for (const auto& atom : a.atoms) {
        if (atom.theta < a.alpha - 1e-12 || atom.theta > a.beta + 1e-12)
          fail(Errc::SupportOutOfRange, "atom outside its arc");
        const double reduced = branch.reduce(atom.theta);
        const bool on_cut = (reduced == branch.t0) || (reduced == branch.t0 + kTwoPi);
        if (on_cut && branch.closure == ArcClosure::LeftClosed && j == r - 1)
          fail(Errc::AtomOnCut,
               "last measure carries a point mass at e^{i t0}; use the right-closed branch");
      }
      parts.push_back(CircleMeasure::from_atoms(a.atoms, branch, false));
    }
    if (a.density) {
      if (a.quad_nodes < 1) fail(Errc::Unsupported, "arc density needs quad_nodes >= 1");
      parts.push_back(
          CircleMeasure::from_arc(a.alpha, a.beta, a.density, a.quad_nodes, branch, false));
    }
    if (parts.empty()) fail(Errc::Unsupported, "arc " + std::to_string(j) + " has no mass");
    entries.emplace_back(CircleMeasure::combine(parts, normalize));
  }
  MeasureSystem sys(std::move(entries), branch);
  sys.flag_angelesco();
  return sys;
}

namespace {

// The trigonometric family attached to one weight: half-angle harmonics for
// even m, the constant plus whole harmonics for odd m.
void append_trig_family(std::vector<std::function<double(double)>>& out,
                        const std::function<double(double)>& w, int m) {
  if (m % 2 == 0) {
    for (int k = 1; k <= m / 2; ++k) {
      const double h = (2.0 * k - 1.0) / 2.0;
      out.push_back([w, h](double t) { return w(t) * std::cos(h * t); });
      out.push_back([w, h](double t) { return w(t) * std::sin(h * t); });
    }
  } else {
    out.push_back([](double) { return 1.0; });
    for (int k = 1; k <= (m - 1) / 2; ++k) {
      out.push_back([w, k](double t) { return w(t) * std::cos(k * t); });
      out.push_back([w, k](double t) { return w(t) * std::sin(k * t); });
    }
  }
}

}  // namespace

ATSystem build_at_system(const CircleMeasure& base,
                         const std::vector<std::function<double(double)>>& weights,
                         const MultiIndex& n, int samples, std::uint64_t seed) {
  if (static_cast<int>(weights.size()) != n.r())
    fail(Errc::DimensionMismatch, "one weight function per index component");

  // Arc bounds of the base measure, in original coordinates.
  double alpha = 0.0, beta = 0.0;
  if (!base.arcs().empty()) {
    alpha = base.arcs().front().alpha;
    beta = base.arcs().front().beta;
    for (const auto& arc : base.arcs()) {
      alpha = std::min(alpha, arc.alpha);
      beta = std::max(beta, arc.beta);
    }
  } else if (!base.atoms().empty()) {
    alpha = beta = base.atoms().front().theta;
    for (const auto& a : base.atoms()) {
      alpha = std::min(alpha, a.theta);
      beta = std::max(beta, a.theta);
    }
  } else {
    fail(Errc::Unsupported, "base measure has no support");
  }

  std::vector<MeasureSource> entries;
  for (int j = 0; j < n.r(); ++j) {
    std::vector<CircleAtom> pts = base.support_points();
    for (auto& p : pts) {
      p.weight *= weights[j](p.theta);
      if (p.weight < 0.0) fail(Errc::Unsupported, "AT weights must be nonnegative");
    }
    std::erase_if(pts, [](const CircleAtom& p) { return p.weight == 0.0; });
    entries.emplace_back(CircleMeasure::from_atoms(std::move(pts), base.branch(), true));
  }
  ATSystem result{MeasureSystem(std::move(entries), base.branch()), {}};

  std::vector<std::function<double(double)>> family;
  for (int j = 0; j < n.r(); ++j) append_trig_family(family, weights[j], n[j]);
  const int dim = static_cast<int>(family.size());
  result.certificate.dimension = dim;
  result.certificate.samples = samples;
  if (dim == 0) {
    result.certificate.sign = 1;
    return result;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(alpha, beta);
  int sign = 0;
  double min_abs = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> xs(dim);
    for (int attempt = 0;; ++attempt) {
      for (double& x : xs) x = unif(rng);
      std::sort(xs.begin(), xs.end());
      bool distinct = true;
      for (int i = 1; i < dim; ++i)
        if (xs[i] - xs[i - 1] < 1e-10 * (beta - alpha)) distinct = false;
      if (distinct) break;
      if (attempt > 1000) fail(Errc::Unsupported, "failed to draw distinct sample points");
    }
    ComplexMatrix w(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) w(i, k) = family[i](xs[k]);
    LuFactor lu(w);
    const double d = lu.determinant().real();
    if (lu.singular() || d == 0.0)
      fail(Errc::ChebyshevSampleFailure,
           "sampled Chebyshev determinant vanished for index " + n.str());
    const int s_sign = d > 0.0 ? 1 : -1;
    if (sign == 0) {
      sign = s_sign;
      min_abs = std::abs(d);
    } else if (s_sign != sign) {
      fail(Errc::ChebyshevSampleFailure,
           "sampled Chebyshev determinant changed sign for index " + n.str());
    } else {
      min_abs = std::min(min_abs, std::abs(d));
    }
  }
  result.certificate.sign = sign;
  result.certificate.min_abs_det = min_abs;
  return result;
}

RealMeasure RealMeasure::from_atoms(std::vector<RealAtom> atoms, bool normalize) {
  RealMeasure m;
  double mass = 0.0;
  for (const auto& a : atoms) {
    if (std::abs(a.x) > 2.0 + 1e-12)
      fail(Errc::SupportOutOfRange, "real measure support must lie in [-2, 2]");
    if (!(a.weight > 0.0)) fail(Errc::Unsupported, "atom weights must be positive");
    mass += a.weight;
  }
  m.atoms_ = std::move(atoms);
  m.total_mass_ = mass;
  if (normalize && mass > 0.0) {
    for (auto& a : m.atoms_) a.weight /= mass;
    m.total_mass_ = 1.0;
  }
  return m;
}

RealMeasure RealMeasure::from_density(double a, double b,
                                      const std::function<double(double)>& density,
                                      int quad_nodes, bool normalize) {
  if (a < -2.0 - 1e-12 || b > 2.0 + 1e-12 || !(b > a))
    fail(Errc::SupportOutOfRange, "density interval must lie in [-2, 2]");
  std::vector<double> xs, ws;
  gauss_legendre(quad_nodes, a, b, xs, ws);
  std::vector<RealAtom> atoms(quad_nodes);
  for (int i = 0; i < quad_nodes; ++i) atoms[i] = {xs[i], density(xs[i]) * ws[i]};
  return from_atoms(std::move(atoms), normalize);
}

double RealMeasure::moment(int k) const {
  double acc = 0.0;
  for (const auto& a : atoms_) acc += a.weight * std::pow(a.x, k);
  return acc;
}

double RealMeasure::integrate_poly(const std::vector<double>& coeffs) const {
  double acc = 0.0;
  for (const auto& a : atoms_) {
    double v = 0.0;
    for (std::size_t d = coeffs.size(); d-- > 0;) v = v * a.x + coeffs[d];
    acc += a.weight * v;
  }
  return acc;
}

int RealMeasure::support_size() const {
  std::vector<double> xs;
  for (const auto& a : atoms_) xs.push_back(a.x);
  std::sort(xs.begin(), xs.end());
  int count = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i == 0 || xs[i] - xs[i - 1] > 1e-14) ++count;
  return count;
}

CircleMeasure szego_map(const RealMeasure& g, BranchSpec branch) {
  std::vector<CircleAtom> atoms;
  for (const auto& a : g.atoms()) {
    const double x = std::clamp(a.x, -2.0, 2.0);
    if (x == 2.0) {
      atoms.push_back({branch.reduce(0.0), a.weight});
    } else if (x == -2.0) {
      atoms.push_back({branch.reduce(kPi), a.weight});
    } else {
      const double theta = std::acos(0.5 * x);
      atoms.push_back({branch.reduce(theta), 0.5 * a.weight});
      atoms.push_back({branch.reduce(-theta), 0.5 * a.weight});
    }
  }
  return CircleMeasure::from_atoms(std::move(atoms), branch, false);
}

MeasureSystem szego_map(const RealSystem& gammas, BranchSpec branch) {
  std::vector<MeasureSource> entries;
  for (const auto& g : gammas) entries.emplace_back(szego_map(g, branch));
  return MeasureSystem(std::move(entries), branch);
}

}  // namespace lmop

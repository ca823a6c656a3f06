#include <random>

#include "doctest.h"
#include "lmop/mop_engine.hpp"
#include "support/toys.hpp"

using namespace lmop;
using toys::kPi;

TEST_CASE("moment matrix of the Lebesgue system is the identity") {
  MeasureSystem sys = toys::lebesgue_system();
  const MomentMatrix m = build_moment_matrix(sys, MultiIndex{2});
  REQUIRE(m.mat.rows() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(m.mat(i, j) - (i == j ? 1.0 : 0.0)) < 1e-13);
}

TEST_CASE("index zero is normal by convention") {
  MeasureSystem sys = toys::lebesgue_system();
  const NormalityReport rep = normality(sys, MultiIndex{0});
  CHECK(rep.normal);
  CHECK(rep.det == Complex(1.0));
}

TEST_CASE("moment matrix entries follow the half-exponent pattern") {
  std::mt19937_64 rng(3);
  MeasureSystem sys = toys::random_atoms_system(rng, 2, 5);
  const MultiIndex n{1, 1};
  const MomentMatrix m = build_moment_matrix(sys, n);
  // Block j, row k, column l holds the half moment with twice-exponent
  // (2l - |n|) + (n_j - 2k).
  for (int l = 0; l < 2; ++l) {
    CHECK(m.mat(0, l) == sys.half_moment(0, 2 * l - 2 + 1));
    CHECK(m.mat(1, l) == sys.half_moment(1, 2 * l - 2 + 1));
  }
}

TEST_CASE("normality across simple systems") {
  MeasureSystem leb = toys::lebesgue_system();
  for (int total = 1; total <= 6; ++total)
    CHECK(normality(leb, MultiIndex{total}).normal);

  // Two identical measures give duplicate blocks.
  std::mt19937_64 rng(5);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 9);
  std::vector<MeasureSource> entries{mu, mu};
  MeasureSystem dup(std::move(entries), {});
  const NormalityReport rep = normality(dup, MultiIndex{1, 1});
  CHECK(!rep.normal);
  CHECK(std::abs(rep.det) <= 1e-12 * std::max(1.0, rep.matrix_norm));
}

TEST_CASE("angelesco systems are normal for all small indices") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 3; ++rep) {
    const int r = 2 + rep % 2;
    MeasureSystem sys = toys::random_angelesco(rng, r, 12, 25);
    for (const MultiIndex& n : indices_up_to(r, 4))
      CHECK(normality(sys, n).normal);
  }
}

TEST_CASE("solve_type2 on the Lebesgue system") {
  MeasureSystem sys = toys::lebesgue_system();
  const HalfLaurentPoly phi = solve_type2(sys, MultiIndex{2});
  CHECK(phi.max_coeff_distance(HalfLaurentPoly::monomial(2, 1.0)) < 1e-12);
  CHECK(solve_type2(sys, MultiIndex{0}).max_coeff_distance(HalfLaurentPoly::one()) == 0.0);
}

TEST_CASE("solve_type2 matches an independent Cramer solve on a toy") {
  // Single measure, atom pair: phi_(1) = z^{1/2} - (int z dmu) z^{-1/2}.
  const CircleMeasure pair =
      CircleMeasure::from_atoms({{kPi / 3, 0.5}, {-kPi / 3, 0.5}});
  std::vector<MeasureSource> entries{pair};
  MeasureSystem sys(std::move(entries), {});
  const HalfLaurentPoly phi = solve_type2(sys, MultiIndex{1});
  CHECK(std::abs(phi.coeff(1) - 1.0) < 1e-14);
  CHECK(std::abs(phi.coeff(-1) + 0.5) < 1e-13);
}

TEST_CASE("solve_type2 against a from-scratch Gaussian solve, r = 2") {
  std::mt19937_64 rng(11);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 3, 3);
  const MultiIndex n{1, 1};
  const HalfLaurentPoly phi = solve_type2(sys, n);

  // Independent construction of the same 2x2 linear system.
  std::vector<std::vector<Complex>> a(2, std::vector<Complex>(2));
  std::vector<Complex> b(2);
  int row = 0;
  for (int j = 0; j < 2; ++j) {
    const int twice_k = -1;  // the single condition k = -1/2 for n_j = 1
    for (int l = 0; l < 2; ++l) a[row][l] = sys.half_moment(j, (2 * l - 2) - twice_k);
    b[row] = -sys.half_moment(j, 2 - twice_k);
    ++row;
  }
  const std::vector<Complex> kappa = toys::gauss_solve(a, b);
  CHECK(std::abs(phi.coeff(-2) - kappa[0]) < 1e-12);
  CHECK(std::abs(phi.coeff(0) - kappa[1]) < 1e-12);
}

TEST_CASE("orthogonality residuals stay below the scaled tolerance") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 4; ++rep) {
    const int r = 2 + rep % 2;
    MeasureSystem sys = toys::random_angelesco(rng, r, 10, 30);
    for (const MultiIndex& n : indices_up_to(r, 4)) {
      const HalfLaurentPoly phi = solve_type2(sys, n);
      const double resid = type2_residual(sys, n, phi);
      CHECK(resid < defaults::resid_tol * residual_scale(sys, phi.l1_norm()));
    }
  }
}

TEST_CASE("heine determinantal route agrees with the linear solve") {
  MeasureSystem leb = toys::lebesgue_system();
  CHECK(heine_type2(leb, MultiIndex{2})
            .max_coeff_distance(HalfLaurentPoly::monomial(2, 1.0)) < 1e-12);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 3; ++rep) {
    const int r = 2 + rep % 2;
    MeasureSystem sys = toys::random_angelesco(rng, r, 8, 16);
    for (const MultiIndex& n : indices_up_to(r, 4)) {
      const HalfLaurentPoly a = solve_type2(sys, n);
      const HalfLaurentPoly b = heine_type2(sys, n);
      CHECK(a.max_coeff_distance(b) <= 1e-8 * std::max(1.0, a.l1_norm()));
    }
  }
}

TEST_CASE("reversed solution is the sharp of the plain one") {
  MeasureSystem leb = toys::lebesgue_system();
  CHECK(solve_type2_reversed(leb, MultiIndex{2})
            .max_coeff_distance(HalfLaurentPoly::monomial(-2, 1.0)) < 1e-12);
  CHECK(solve_type2_reversed(leb, MultiIndex{0}).coeff(0) == Complex(1.0));

  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 3; ++rep) {
    MeasureSystem sys = toys::random_angelesco(rng, 2, 8, 14);
    for (const MultiIndex& n : indices_up_to(2, 3)) {
      const HalfLaurentPoly sharp_phi = solve_type2(sys, n).sharp();
      const HalfLaurentPoly rev = solve_type2_reversed(sys, n);
      CHECK(rev.max_coeff_distance(sharp_phi) <= 1e-10 * std::max(1.0, rev.l1_norm()));
      CHECK(type2_residual(sys, n, rev, true) <
            defaults::resid_tol * residual_scale(sys, rev.l1_norm()));
    }
  }
}

TEST_CASE("type I coefficient matrix is exactly the transposed moment matrix") {
  std::mt19937_64 rng(23);
  MeasureSystem sys = toys::random_angelesco(rng, 3, 6, 9);
  for (const MultiIndex& n : {MultiIndex{1, 1, 1}, MultiIndex{2, 1, 0}, MultiIndex{2, 2, 1}}) {
    const ComplexMatrix t = type1_coefficient_matrix(sys, n);
    const ComplexMatrix mt = build_moment_matrix(sys, n).mat.transpose();
    REQUIRE(t.rows() == mt.rows());
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) CHECK(t(i, j) == mt(i, j));
  }
}

TEST_CASE("type I vector on the Lebesgue system") {
  MeasureSystem sys = toys::lebesgue_system();
  const TypeIVector xi = solve_type1(sys, MultiIndex{2});
  REQUIRE(xi.components.size() == 1);
  // xi = 1: the unit condition at k = 0 reads "integral xi dmu = 1".
  CHECK(std::abs(xi.components[0].coeff(0) - 1.0) < 1e-12);
  CHECK(std::abs(xi.components[0].coeff(-2)) < 1e-12);
  CHECK(type1_residual(sys, MultiIndex{2}, xi) < 1e-12);
}

TEST_CASE("type I rejects the zero index and singular systems") {
  MeasureSystem sys = toys::lebesgue_system();
  CHECK_THROWS_AS(solve_type1(sys, MultiIndex{0}), Error);
  try {
    solve_type1(sys, MultiIndex{0});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoTypeIAtZero);
  }

  std::mt19937_64 rng(29);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 8);
  std::vector<MeasureSource> entries{mu, mu};
  MeasureSystem dup(std::move(entries), {});
  CHECK_THROWS_AS(solve_type1(dup, MultiIndex{1, 1}), Error);
}

TEST_CASE("type I conditions hold on random angelesco toys") {
  std::mt19937_64 rng(31);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 10, 20);
  for (const MultiIndex& n : indices_up_to(2, 4)) {
    if (n.is_zero()) continue;
    const TypeIVector xi = solve_type1(sys, n);
    CHECK(type1_residual(sys, n, xi) <
          defaults::resid_tol * residual_scale(sys, std::max(1.0, xi.l1_norm())));
    const TypeIVector xis = solve_type1_reversed(sys, n);
    CHECK(type1_residual(sys, n, xis, true) <
          defaults::resid_tol * residual_scale(sys, std::max(1.0, xis.l1_norm())));
    // Measure-backed systems: the reversed vector is the sharp of the plain one.
    CHECK(xis.max_coeff_distance(xi.sharp()) <= 1e-10 * std::max(1.0, xis.l1_norm()));
  }
}

TEST_CASE("omega at m=0 reproduces the classical polynomial problem") {
  std::mt19937_64 rng(37);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 12);
  std::vector<MeasureSource> entries{mu};
  MeasureSystem sys(std::move(entries), {});
  for (int deg = 0; deg <= 6; ++deg) {
    const HalfLaurentPoly phi = solve_laurent_type2(sys, MultiIndex{deg}, MultiIndex{0});
    const std::vector<Complex> classical = toys::classical_opuc_monic(mu, deg);
    for (int l = 0; l <= deg; ++l)
      CHECK(std::abs(phi.coeff(2 * l) - classical[l]) < 1e-9);
  }
}

TEST_CASE("omega at m=n carries the same linear conditions as M_{2n}") {
  std::mt19937_64 rng(41);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 8, 12);
  const MultiIndex n{2, 1};
  const OmegaMatrix om = build_omega(sys, n, n);
  const MomentMatrix m2n = build_moment_matrix(sys, n.doubled());
  REQUIRE(om.mat.rows() == m2n.mat.rows());
  for (int i = 0; i < om.mat.rows(); ++i)
    for (int j = 0; j < om.mat.cols(); ++j) CHECK(om.mat(i, j) == m2n.mat(i, j));

  const HalfLaurentPoly a = solve_laurent_type2(sys, n, n);
  const HalfLaurentPoly b = solve_type2(sys, n.doubled());
  CHECK(a.max_coeff_distance(b) <= 1e-10 * std::max(1.0, a.l1_norm()));
}

TEST_CASE("r=1 closed form: Phi_{n,m}(z) = z^{-m} Phi_{n+m}(z)") {
  std::mt19937_64 rng(43);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 14);
  std::vector<MeasureSource> entries{mu};
  MeasureSystem sys(std::move(entries), {});
  for (int ntot = 0; ntot <= 5; ++ntot)
    for (int mtot = 0; mtot <= 3; ++mtot) {
      const HalfLaurentPoly lhs =
          solve_laurent_type2(sys, MultiIndex{ntot}, MultiIndex{mtot});
      const std::vector<Complex> cls = toys::classical_opuc_monic(mu, ntot + mtot);
      HalfLaurentPoly rhs;
      for (int l = 0; l <= ntot + mtot; ++l) rhs.set_coeff(2 * (l - mtot), cls[l]);
      CHECK(lhs.max_coeff_distance(rhs) <= 1e-9 * std::max(1.0, rhs.l1_norm()));

      // Star form: z^n sharp(Phi_{n+m}) = z^{n-m} sharp(z^{-m} Phi_{n+m}).
      const HalfLaurentPoly star =
          solve_laurent_type2_star(sys, MultiIndex{ntot}, MultiIndex{mtot});
      const HalfLaurentPoly direct = rhs.sharp().mul_by_power(2 * ntot - 2 * mtot);
      CHECK(star.max_coeff_distance(direct) <= 1e-9 * std::max(1.0, star.l1_norm()));
    }
}

TEST_CASE("reversal duality between the pair problems") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 3; ++rep) {
    MeasureSystem sys = toys::random_angelesco(rng, 2, 10, 16);
    for (const MultiIndex& n : indices_up_to(2, 2))
      for (const MultiIndex& m : indices_up_to(2, 2)) {
        const HalfLaurentPoly phi = solve_laurent_type2(sys, n, m);
        const HalfLaurentPoly star = solve_laurent_type2_star(sys, m, n);
        CHECK(phi.sharp().max_coeff_distance(star) <=
              1e-10 * std::max(1.0, star.l1_norm()));
        const Complex alpha = alpha_coefficient(phi, m.total());
        const Complex beta = beta_coefficient(solve_laurent_type2_star(sys, m, n), m.total());
        CHECK(std::abs(alpha - std::conj(beta)) < 1e-10);
      }
  }
}

TEST_CASE("laurent residuals on functional-backed systems") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(-0.3, 0.3);
  std::map<int, Complex> c{{0, 1.0}};
  for (int k = 1; k <= 12; ++k) {
    c[k] = Complex(unif(rng), unif(rng));
    c[-k] = Complex(unif(rng), unif(rng));  // deliberately not conjugate
  }
  std::vector<MeasureSource> entries{MomentFunctional(std::move(c), 12)};
  MeasureSystem sys(std::move(entries), {});
  const MultiIndex n{2}, m{1};
  REQUIRE(laurent_normality(sys, n, m).normal);
  const HalfLaurentPoly phi = solve_laurent_type2(sys, n, m);
  CHECK(laurent_type2_residual(sys, n, m, phi) < 1e-10 * std::max(1.0, phi.l1_norm()));
  const HalfLaurentPoly star = solve_laurent_type2_star(sys, n, m);
  CHECK(laurent_type2_residual(sys, n, m, star, true) <
        1e-10 * std::max(1.0, star.l1_norm()));

  // Half-exponent problems over functionals need an all-even index.
  CHECK_THROWS_AS(build_moment_matrix(sys, MultiIndex{1}), Error);
  CHECK_NOTHROW(build_moment_matrix(sys, MultiIndex{2}));
}

TEST_CASE("functional truncation surfaces as TruncationExceeded") {
  std::map<int, Complex> c{{0, 1.0}};
  std::vector<MeasureSource> entries{MomentFunctional(std::move(c), 2)};
  MeasureSystem sys(std::move(entries), {});
  CHECK_THROWS_AS(build_omega(sys, MultiIndex{3}, MultiIndex{2}), Error);
  try {
    build_omega(sys, MultiIndex{3}, MultiIndex{2});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncationExceeded);
  }
}

TEST_CASE("two-sided type I vectors: specialization at m = n") {
  std::mt19937_64 rng(59);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 10, 14);
  for (const MultiIndex& n : {MultiIndex{1, 1}, MultiIndex{2, 1}}) {
    const TypeIVector lam = solve_laurent_type1(sys, n, n);
    const TypeIVector xi = solve_type1(sys, n.doubled());
    CHECK(lam.max_coeff_distance(xi.mul_by_power(2)) <=
          1e-9 * std::max(1.0, lam.l1_norm()));
    const TypeIVector lam_star = solve_laurent_type1_star(sys, n, n);
    const TypeIVector xis = solve_type1_reversed(sys, n.doubled());
    CHECK(lam_star.max_coeff_distance(xis.mul_by_power(-2)) <=
          1e-9 * std::max(1.0, lam_star.l1_norm()));
  }
}

TEST_CASE("two-sided type I: conditions, duality and biorthogonality") {
  std::mt19937_64 rng(61);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 12, 18);
  for (const MultiIndex& n : indices_up_to(2, 2))
    for (const MultiIndex& m : indices_up_to(2, 2)) {
      if (n.total() + m.total() == 0) continue;
      const TypeIVector lam = solve_laurent_type1(sys, n, m);
      CHECK(laurent_type1_residual(sys, n, m, lam) <
            1e-9 * residual_scale(sys, std::max(1.0, lam.l1_norm())));
      const TypeIVector lam_star = solve_laurent_type1_star(sys, n, m);
      CHECK(laurent_type1_residual(sys, n, m, lam_star, true) <
            1e-9 * residual_scale(sys, std::max(1.0, lam_star.l1_norm())));

      // sharp duality against the swapped index pair.
      const TypeIVector swapped_star = solve_laurent_type1_star(sys, m, n);
      CHECK(lam.sharp().max_coeff_distance(swapped_star) <=
            1e-9 * std::max(1.0, lam.l1_norm()));

      // Biorthogonality values.
      const HalfLaurentPoly phi = solve_laurent_type2(sys, n, m);
      const HalfLaurentPoly star = solve_laurent_type2_star(sys, n, m);
      const Complex alpha = alpha_coefficient(phi, m.total());
      const Complex beta = beta_coefficient(star, n.total());
      Complex lhs1 = 0.0, lhs2 = 0.0;
      for (int j = 0; j < sys.r(); ++j) {
        lhs1 += sys.integrate(j, lam.components[j].mul_by_power(2 * m.total()));
        lhs2 += sys.integrate(j, lam_star.components[j].mul_by_power(-2 * n.total()));
      }
      CHECK(std::abs(lhs1 + std::conj(beta)) < 1e-9 * std::max(1.0, std::abs(beta)));
      CHECK(std::abs(lhs2 + std::conj(alpha)) < 1e-9 * std::max(1.0, std::abs(alpha)));
    }
}

TEST_CASE("solver cache returns identical objects") {
  std::mt19937_64 rng(67);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 8, 10);
  LaurentSolver solver(sys);
  const MultiIndex n{1, 1}, m{1, 0};
  const HalfLaurentPoly a = solver.type2(n, m);
  const HalfLaurentPoly b = solver.type2(n, m);
  CHECK(a.max_coeff_distance(b) == 0.0);
  CHECK(solver.is_normal(n, m));
}

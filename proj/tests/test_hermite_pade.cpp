#include <random>

#include "doctest.h"
#include "lmop/hermite_pade.hpp"
#include "support/toys.hpp"

using namespace lmop;
using toys::kPi;

TEST_CASE("two point series windows are hard boundaries") {
  const CircleMeasure leb = CircleMeasure::lebesgue();
  const TwoPointSeries s = measure_series(leb, 4);
  CHECK(std::abs(s.coeff_at0(0) - 1.0) < 1e-13);
  CHECK(std::abs(s.coeff_at_inf(0) + 1.0) < 1e-13);
  CHECK(s.coeff_at0(-3) == Complex(0.0));   // structural zero below the window
  CHECK(s.coeff_at_inf(2) == Complex(0.0)); // structural zero above the window
  CHECK_THROWS_AS(s.coeff_at0(5), Error);
  CHECK_THROWS_AS(s.coeff_at_inf(-5), Error);
}

TEST_CASE("multiply by one and by z") {
  std::mt19937_64 rng(3);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 9);
  const TwoPointSeries s = measure_series(mu, 6);

  const TwoPointSeries same = multiply(HalfLaurentPoly::one(), s);
  for (int q = 0; q <= 6; ++q) CHECK(same.coeff_at0(q) == s.coeff_at0(q));

  const TwoPointSeries shifted = multiply(HalfLaurentPoly::monomial(2, 1.0), s);
  CHECK(shifted.start0() == 1);
  CHECK(shifted.start_inf() == 1);
  for (int q = 1; q <= 6; ++q) CHECK(shifted.coeff_at0(q) == s.coeff_at0(q - 1));
  CHECK(shifted.coeff_at_inf(1) == s.coeff_at_inf(0));
}

TEST_CASE("multiply rejects half-integer exponents") {
  const TwoPointSeries s = measure_series(CircleMeasure::lebesgue(), 4);
  CHECK_THROWS_AS(multiply(HalfLaurentPoly::monomial(1, 1.0), s), Error);
}

TEST_CASE("series difference across the two tracks encodes orthogonality") {
  // (a_k - b_k)/2 equals the integral of p(z) z^{-k} dmu.
  std::mt19937_64 rng(5);
  const CircleMeasure mu = toys::random_atoms_measure(rng, 11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  HalfLaurentPoly p;
  for (int e = -3; e <= 3; ++e) p.set_coeff(2 * e, Complex(unif(rng), unif(rng)));
  const TwoPointSeries u = multiply(p, measure_series(mu, 12));
  for (int k = -3; k <= 3; ++k) {
    const Complex a = u.coeff_at0(k);
    const Complex b = u.coeff_at_inf(k);
    const Complex direct = mu.integrate(p.mul_by_power(-2 * k));
    CHECK(std::abs(0.5 * (a - b) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("phi problem contact on the Lebesgue system") {
  MeasureSystem sys = toys::lebesgue_system();
  const MultiIndex half{1};
  const HalfLaurentPoly phi = solve_type2(sys, half.doubled());
  const ContactReport rep = type2_contact(sys, phi, half, half);
  CHECK(rep.pass);
  const ContactReport srep = type2_contact(sys, phi.sharp(), half, half, true);
  CHECK(srep.pass);
}

TEST_CASE("phi problem contact orders on angelesco toys, with necessity") {
  std::mt19937_64 rng(7);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 10, 16);
  for (const MultiIndex& half : indices_up_to(2, 2)) {
    if (half.is_zero()) continue;
    const HalfLaurentPoly phi = solve_type2(sys, half.doubled());
    const ContactReport rep = type2_contact(sys, phi, half, half);
    REQUIRE(rep.pass);
    // Scalar multiples still satisfy the (un-normalized) problem.
    CHECK(type2_contact(sys, phi.scaled(2.5), half, half).pass);
    // Star problem for the sharp polynomial.
    CHECK(type2_contact(sys, phi.sharp(), half, half, true).pass);

    // Perturbing any solved coefficient breaks at least one window.
    for (const auto& [e, c] : phi.terms()) {
      HalfLaurentPoly bad = phi;
      bad.set_coeff(e, c + 1e-3);
      const ContactReport broken = type2_contact(sys, bad, half, half);
      CHECK(!broken.pass);
    }
  }
}

TEST_CASE("require_contact raises OrderViolation with diagnostics") {
  std::mt19937_64 rng(11);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 8, 10);
  const MultiIndex half{1, 1};
  HalfLaurentPoly bad = solve_type2(sys, half.doubled());
  bad.set_coeff(0, bad.coeff(0) + 1e-3);
  const ContactReport rep = type2_contact(sys, bad, half, half);
  CHECK_THROWS_AS(require_contact(rep, "phi problem"), Error);
  try {
    require_contact(rep, "phi problem");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OrderViolation);
  }
}

TEST_CASE("second kind interpolant closed forms") {
  const CircleMeasure leb = CircleMeasure::lebesgue();
  // p = 1 (n = 0): pi = -total mass.
  const HalfLaurentPoly pi0 = second_kind(HalfLaurentPoly::one(), leb);
  CHECK(std::abs(pi0.coeff(0) + 1.0) < 1e-13);
  CHECK(pi0.term_count() == 1);
  // Lebesgue, p = z: pi = -z.
  const HalfLaurentPoly pi1 = second_kind(HalfLaurentPoly::monomial(2, 1.0), leb);
  CHECK(std::abs(pi1.coeff(2) + 1.0) < 1e-13);
  CHECK(pi1.trimmed(1e-12).term_count() == 1);
}

TEST_CASE("second kind interpolant matches the contact extraction") {
  std::mt19937_64 rng(13);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 12, 18);
  for (const MultiIndex& half : indices_up_to(2, 2)) {
    if (half.is_zero()) continue;
    const HalfLaurentPoly phi = solve_type2(sys, half.doubled());
    const ContactReport rep = type2_contact(sys, phi, half, half);
    REQUIRE(rep.pass);
    for (int j = 0; j < sys.r(); ++j) {
      const HalfLaurentPoly pi = second_kind(phi, sys.measure(j));
      CHECK(pi.max_coeff_distance(rep.interpolants[j]) <=
            1e-9 * std::max(1.0, pi.l1_norm()));
      // The sharp variant solves the reversed problem (with flipped sign).
      const ContactReport srep = type2_contact(sys, phi.sharp(), half, half, true);
      CHECK(pi.sharp().scaled(-1.0).max_coeff_distance(srep.interpolants[j]) <=
            1e-9 * std::max(1.0, pi.l1_norm()));
    }
  }
}

TEST_CASE("generalized problems meet their windows over functionals") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-0.25, 0.25);
  std::vector<MeasureSource> entries;
  for (int j = 0; j < 2; ++j) {
    std::map<int, Complex> c{{0, 1.0}};
    for (int k = 1; k <= 14; ++k) {
      c[k] = Complex(unif(rng), unif(rng));
      c[-k] = Complex(unif(rng), unif(rng));
    }
    entries.emplace_back(MomentFunctional(std::move(c), 14));
  }
  MeasureSystem sys(std::move(entries), {});

  for (const MultiIndex& n : {MultiIndex{1, 1}, MultiIndex{2, 1}})
    for (const MultiIndex& m : {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{1, 1}}) {
      REQUIRE(laurent_normality(sys, n, m).normal);
      const HalfLaurentPoly phi = solve_laurent_type2(sys, n, m);
      CHECK(type2_contact(sys, phi, n, m).pass);
      const HalfLaurentPoly star = solve_laurent_type2_star(sys, n, m);
      CHECK(type2_contact(sys, star, n, m, true).pass);
      if (n.total() + m.total() > 0 && laurent_normality(sys, m, n).normal) {
        const TypeIVector lam = solve_laurent_type1(sys, n, m);
        CHECK(type1_contact(sys, lam, n, m).pass);
        const TypeIVector lam_star = solve_laurent_type1_star(sys, n, m);
        CHECK(type1_contact(sys, lam_star, n, m).pass);
      }
    }
}

TEST_CASE("type I contact fails when the vector is perturbed") {
  std::mt19937_64 rng(19);
  MeasureSystem sys = toys::random_angelesco(rng, 2, 10, 14);
  const MultiIndex n{1, 1}, m{1, 1};
  TypeIVector lam = solve_laurent_type1(sys, n, m);
  REQUIRE(type1_contact(sys, lam, n, m).pass);
  lam.components[0].set_coeff(2, lam.components[0].coeff(2) + 1e-3);
  CHECK(!type1_contact(sys, lam, n, m).pass);
}

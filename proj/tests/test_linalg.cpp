#include <random>

#include "doctest.h"
#include "lmop/linalg.hpp"
#include "support/toys.hpp"

using namespace lmop;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(unif(rng), unif(rng));
  return a;
}

}  // namespace

TEST_CASE("lu_solve on trivial systems") {
  ComplexMatrix eye(3, 3);
  for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
  auto x = lu_solve(eye, {1.0, 2.0, 3.0});
  CHECK(x[0] == Complex(1.0));
  CHECK(x[1] == Complex(2.0));
  CHECK(x[2] == Complex(3.0));

  ComplexMatrix swap(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  auto y = lu_solve(swap, {Complex(5.0, 1.0), Complex(-2.0, 0.5)});
  CHECK(y[0] == Complex(-2.0, 0.5));
  CHECK(y[1] == Complex(5.0, 1.0));
}

TEST_CASE("lu_solve recovers a planted solution") {
  std::mt19937_64 rng(101);
  ComplexMatrix a = random_matrix(rng, 8);
  std::vector<Complex> x_true(8);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& v : x_true) v = Complex(unif(rng), unif(rng));
  const std::vector<Complex> b = a * x_true;
  const std::vector<Complex> x = lu_solve(a, b);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(x[i] - x_true[i]) < 1e-10);
}

TEST_CASE("lu_solve residual bound") {
  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + rep;
    ComplexMatrix a = random_matrix(rng, n);
    std::vector<Complex> b(n);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (auto& v : b) v = Complex(unif(rng), unif(rng));
    const std::vector<Complex> x = lu_solve(a, b);
    const std::vector<Complex> ax = a * x;
    double resid = 0.0, xnorm = 0.0, bnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      resid = std::max(resid, std::abs(ax[i] - b[i]));
      xnorm = std::max(xnorm, std::abs(x[i]));
      bnorm = std::max(bnorm, std::abs(b[i]));
    }
    const double tol = 1e3 * std::numeric_limits<double>::epsilon() * n;
    CHECK(resid <= tol * (a.inf_norm() * xnorm + bnorm));
  }
}

TEST_CASE("singular matrices are reported") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  LuFactor lu(a);
  CHECK(lu.singular());
  CHECK_THROWS_AS(lu.solve({1.0, 1.0}), Error);
  CHECK(std::abs(lu.determinant()) <= 1e-12 * a.inf_norm());
  CHECK(smallest_singular_value_estimate(a) == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  ComplexMatrix a(2, 3);
  CHECK_THROWS_AS(LuFactor{a}, Error);
  ComplexMatrix sq(2, 2);
  sq(0, 0) = sq(1, 1) = 1.0;
  CHECK_THROWS_AS(lu_solve(sq, {1.0, 2.0, 3.0}), Error);
}

TEST_CASE("det of small matrices") {
  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = Complex(0.0, 3.0);
  CHECK(std::abs(det(d) - Complex(0.0, 6.0)) < 1e-14);
}

TEST_CASE("det matches permutation expansion on random 5x5") {
  std::mt19937_64 rng(107);
  for (int rep = 0; rep < 8; ++rep) {
    ComplexMatrix a = random_matrix(rng, 5);
    std::vector<std::vector<Complex>> rows(5, std::vector<Complex>(5));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) rows[i][j] = a(i, j);
    const Complex expected = toys::perm_det(rows);
    CHECK(std::abs(det(a) - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("det is multiplicative on random 6x6 pairs") {
  std::mt19937_64 rng(109);
  for (int rep = 0; rep < 12; ++rep) {
    ComplexMatrix a = random_matrix(rng, 6);
    ComplexMatrix b = random_matrix(rng, 6);
    const Complex lhs = det(a * b);
    const Complex rhs = det(a) * det(b);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("sigma_min estimate on known matrices") {
  // Diagonal: sigma_min is the smallest |entry|.
  ComplexMatrix d(3, 3);
  d(0, 0) = 4.0;
  d(1, 1) = Complex(0.0, 0.25);
  d(2, 2) = -2.0;
  CHECK(smallest_singular_value_estimate(d) == doctest::Approx(0.25).epsilon(1e-8));

  // Scaled rotation: all singular values equal the scale.
  ComplexMatrix q(2, 2);
  const double c = std::cos(0.7), s = std::sin(0.7);
  q(0, 0) = 3.0 * c;
  q(0, 1) = -3.0 * s;
  q(1, 0) = 3.0 * s;
  q(1, 1) = 3.0 * c;
  CHECK(smallest_singular_value_estimate(q) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("solve_adjoint solves the conjugate transpose system") {
  std::mt19937_64 rng(211);
  ComplexMatrix a = random_matrix(rng, 6);
  std::vector<Complex> b(6);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& v : b) v = Complex(unif(rng), unif(rng));
  LuFactor lu(a);
  const std::vector<Complex> x = lu.solve_adjoint(b);
  const std::vector<Complex> ax = a.adjoint() * x;
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ax[i] - b[i]) < 1e-11);
}

TEST_CASE("least squares fits an exact combination") {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ComplexMatrix a(7, 3);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(unif(rng), unif(rng));
  std::vector<Complex> coef = {Complex(0.3, -1.0), Complex(2.0, 0.1), Complex(-0.7, 0.4)};
  const std::vector<Complex> b = a * coef;
  const LeastSquaresResult fit = least_squares(a, b);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(fit.x[j] - coef[j]) < 1e-10);
  CHECK(fit.residual_inf < 1e-10);
  CHECK(fit.gram_sigma_min > 0.0);
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/spectral.hpp"

using namespace qes;

TEST_CASE("matrix band pattern") {
  SpectralMatrix m = build_matrix(2, cd(3.0, 0.0));
  const double expect[3][3] = {{0, 3, 2}, {2, 0, 6}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.entry(i, j) == cd(expect[i][j], 0.0));
  auto e = build_matrix_exact(4, mpq_class(1));
  CHECK(e[0][2] == 2);
  CHECK(e[1][3] == 6);
  CHECK(e[2][4] == 12);
  for (int n = 1; n <= 8; ++n) {
    auto ex = build_matrix_exact(n, mpq_class(5, 3));
    CHECK(ex == oracle::spectral_matrix(n, mpq_class(5, 3)));
  }
}

TEST_CASE("small spectral polynomials") {
  CHECK(spectral_polynomial(1, mpq_class(7)) == ExactPoly{-7, 0, 1});
  CHECK(spectral_polynomial(2, mpq_class(0)) == ExactPoly{4, 0, 0, -1});
  BivariatePoly s2 = spectral_polynomial_symbolic(2);
  CHECK(s2.coeff(0, 0) == 4);
  CHECK(s2.coeff(1, 1) == 4);
  CHECK(s2.coeff(3, 0) == -1);
  CHECK(s2.total_degree() == 3);
}

TEST_CASE("recurrence equals cofactor expansion for random rational a") {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 9; ++n) {
    for (int k = 0; k < 3; ++k) {
      mpq_class a = oracle::random_rational(rng);
      CHECK(spectral_polynomial(n, a) == oracle::charpoly_cofactor(oracle::spectral_matrix(n, a)));
    }
  }
}

TEST_CASE("symbolic polynomial specialises to the numeric one") {
  BivariatePoly s = spectral_polynomial_symbolic(7);
  for (long a = -2; a <= 2; ++a) CHECK(s.at_a(mpq_class(a)) == spectral_polynomial(7, mpq_class(a)));
  CHECK(s.total_degree() == 8);
}

TEST_CASE("eigenvalues: small cases") {
  PointSet s = eigenvalues(1, cd(4.0, 0.0));
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s.points[0] - cd(-2, 0)) < 1e-12);
  CHECK(std::abs(s.points[1] - cd(2, 0)) < 1e-12);
  PointSet t = eigenvalues(2, 0.0);
  std::vector<cd> expect;
  for (int k = 0; k < 3; ++k) expect.push_back(std::cbrt(4.0) * std::polar(1.0, 2 * M_PI * k / 3));
  CHECK(multiset_close(t.points, expect, 1e-12));
}

TEST_CASE("trace, determinant and conjugation invariants") {
  for (int n : {5, 12, 30}) {
    for (cd a : {cd(0.7, 0.0), cd(-1.3, 0.0), cd(0.5, -0.5)}) {
      PointSet s = eigenvalues(n, a);
      cd sum = 0, prod = 1;
      for (auto z : s.points) {
        sum += z;
        prod *= z;
      }
      double scale = std::max(1.0, s.max_modulus());
      CHECK(std::abs(sum) < 1e-8 * scale * (n + 1));
      auto coeffs = spectral_coefficients_mp(n, mp::Complex(a));
      cd c0 = coeffs[0].to_complex();
      CHECK(std::abs(prod - c0) < 1e-8 * std::abs(c0));
      if (a.imag() == 0.0) {
        std::vector<cd> conj;
        for (auto z : s.points) conj.push_back(std::conj(z));
        CHECK(multiset_close(s.points, conj, 1e-8 * scale));
      }
    }
  }
}

TEST_CASE("rotation symmetry at a = 0") {
  PointSet s = scaled_spectrum(200, 0.0, ScalingRule::constant);
  std::vector<cd> rot;
  const cd w = std::polar(1.0, 2 * M_PI / 3);
  for (auto z : s.points) rot.push_back(z * w);
  CHECK(multiset_close(s.points, rot, 1e-8));
}

TEST_CASE("scaling rules") {
  CHECK(scaled_parameter(8, cd(1, 1), ScalingRule::constant) == cd(1, 1));
  CHECK(std::abs(scaled_parameter(8, cd(1, 0), ScalingRule::two_thirds) - cd(4, 0)) < 1e-12);
  PointSet s = scaled_spectrum(2, 0.0, ScalingRule::constant);
  CHECK(std::abs(s.max_modulus() - std::cbrt(4.0) / std::pow(2.0, 4.0 / 3.0)) < 1e-12);
}

TEST_CASE("empirical Cauchy transform") {
  PointSet one;
  one.points = {0.0};
  CHECK(std::abs(empirical_cauchy(one, 2.0) - 0.5) < 1e-15);
  PointSet two;
  two.points = {-1.0, 1.0};
  CHECK(std::abs(empirical_cauchy(two, 0.0)) < 1e-15);
  CHECK_THROWS_AS(empirical_cauchy(two, cd(1.0, 1e-14)), TooClose);
}

TEST_CASE("size cap") {
  EigenOptions o;
  o.cap = 10;
  CHECK_THROWS(eigenvalues(11, 0.0, o));
}

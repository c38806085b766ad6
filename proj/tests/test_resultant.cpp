#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/resultant.hpp"
#include "qes/spectral.hpp"

using namespace qes;

TEST_CASE("resultant sign convention") {
  // Res(x^2 - a, 2x) = -4a at a = 3
  CHECK(resultant(IntPoly{-3, 0, 1}, IntPoly{0, 2}) == -12);
  CHECK(resultant_sylvester(IntPoly{-3, 0, 1}, IntPoly{0, 2}) == -12);
}

TEST_CASE("subresultant PRS agrees with a from-scratch Sylvester determinant") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    auto make = [&](int deg) {
      std::vector<mpz_class> v(static_cast<std::size_t>(deg) + 1);
      for (auto& x : v) x = c(rng);
      if (v.back() == 0) v.back() = 1;
      return IntPoly(v);
    };
    IntPoly p = make(1 + trial % 6), q = make(1 + (trial / 6) % 5);
    mpq_class expect = oracle::resultant_brute(p, q);
    CHECK(mpq_class(resultant(p, q)) == expect);
    CHECK(mpq_class(resultant_sylvester(p, q)) == expect);
  }
}

TEST_CASE("cubic discriminant against -4p^3 - 27q^2") {
  for (long p = -4; p <= 4; ++p)
    for (long q = -3; q <= 3; ++q) {
      IntPoly f{q, p, 0, 1};
      // res(f, f') = -disc for a monic cubic
      CHECK(mpq_class(-resultant(f, f.derivative())) == oracle::depressed_cubic_disc(p, q));
    }
}

TEST_CASE("interpolation through consecutive integers") {
  IntPoly p{5, -3, 0, 2, 1};
  std::vector<mpz_class> v;
  for (int x = -2; x <= 2; ++x) v.push_back(p.eval(x));
  CHECK(interpolate_consecutive(v, -2) == p);
}

TEST_CASE("bivariate discriminant at n = 2 and its evaluation property") {
  BivariatePoly sp = spectral_polynomial_symbolic(2);
  IntPoly d = discriminant_lambda(sp);
  // -lambda^3 + 4 a lambda + 4: up to sign, 256 a^3 - 432
  IntPoly pp = primitive_part(d);
  if (pp.leading() < 0) pp = -pp;
  CHECK(pp == IntPoly{-27, 0, 0, 16});
  for (long a = -3; a <= 3; ++a) {
    IntPoly f = sp.at_a(mpz_class(a));
    CHECK(d.eval(a) == resultant(f, f.derivative()));
  }
}

TEST_CASE("undersized degree bound is detected") {
  BivariatePoly sp = spectral_polynomial_symbolic(4);
  CHECK_THROWS_AS(discriminant_lambda(sp, 2), DegreeMismatch);
}

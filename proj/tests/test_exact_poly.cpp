#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/exact_poly.hpp"
#include "qes/real_roots.hpp"

using namespace qes;

namespace {

IntPoly random_int_poly(std::mt19937_64& rng, int degree, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

}  // namespace

TEST_CASE("karatsuba product matches schoolbook") {
  std::mt19937_64 rng(7);
  for (int da : {3, 23, 24, 40, 97}) {
    for (int db : {1, 24, 50, 97}) {
      IntPoly x = random_int_poly(rng, da, 1000000), y = random_int_poly(rng, db, 1000000);
      IntPoly z = x * y;
      REQUIRE(z.degree() == da + db);
      for (int k = 0; k <= da + db; ++k) {
        mpz_class s = 0;
        for (int i = 0; i <= std::min(k, da); ++i) s += x.coeff(i) * y.coeff(k - i);
        CHECK(z.coeff(k) == s);
      }
    }
  }
}

TEST_CASE("exact division and the error on a remainder") {
  IntPoly p{-1, 0, 1};
  IntPoly q{-1, 1};
  CHECK(exact_div(p, q) == IntPoly{1, 1});
  CHECK_THROWS_AS(exact_div(p, IntPoly{2, 1}), NotDivisible);
  auto [quot, rem] = divmod(ExactPoly{1, 0, 0, 1}, ExactPoly{1, 1});
  CHECK(rem.is_zero());
  CHECK(quot == ExactPoly{1, -1, 1});
}

TEST_CASE("gcd, content and Taylor shift") {
  ExactPoly g = gcd(ExactPoly{-1, 0, 1}, ExactPoly{1, 2, 1});
  CHECK(g == ExactPoly{1, 1});
  CHECK(content(IntPoly{6, -9, 12}) == 3);
  CHECK(primitive_part(IntPoly{-6, 9, -12}) == IntPoly{-2, 3, -4});
  // (x+2)^2 - 4 = x^2 + 4x
  CHECK(taylor_shift(IntPoly{-4, 0, 1}, 2) == IntPoly{0, 4, 1});
}

TEST_CASE("string round trip") {
  IntPoly p{mpz_class("123456789012345678901234567890"), 0, -7};
  CHECK(int_poly_from_strings(coefficient_strings(p)) == p);
  ExactPoly q{mpq_class(1, 3), mpq_class(-5, 7)};
  CHECK(exact_poly_from_strings(coefficient_strings(q)) == q);
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(IntPoly::monomial(1, kMaxCoefficients), DegreeCapExceeded);
}

TEST_CASE("real root isolation") {
  // (x-1)(x-2)(x+3)(2x-1)
  ExactPoly p = oracle::naive_mul(oracle::naive_mul(ExactPoly{-1, 1}, ExactPoly{-2, 1}),
                                  oracle::naive_mul(ExactPoly{3, 1}, ExactPoly{-1, 2}));
  RealRootReport r = real_roots(p);
  REQUIRE(r.count == 4);
  const double expect[] = {-3.0, 0.5, 1.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.intervals[i].lo <= expect[i]);
    CHECK(r.intervals[i].hi >= expect[i]);
  }
  CHECK(real_roots(ExactPoly{1, 0, 1}).count == 0);
  CHECK(real_roots(p, RationalRange::negative_axis()).count == 1);
  CHECK_THROWS_AS(real_roots(ExactPoly{1, 2, 1}), NotSquarefree);
}

TEST_CASE("root bound dominates every root") {
  IntPoly p{-30, 1, 0, 1};  // real root near 3
  mpq_class b = root_bound(p);
  CHECK(sign_at(p, b) > 0);
  CHECK(b > 3);
  IsolatingInterval iv = refine(p, {mpq_class(0), b}, mpq_class(1, 1000000));
  CHECK(iv.hi - iv.lo <= mpq_class(1, 1000000));
  CHECK(sign_at(p, iv.lo) * sign_at(p, iv.hi) <= 0);
}

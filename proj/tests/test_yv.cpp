#include <doctest.h>

#include "oracles.hpp"
#include "qes/aberth.hpp"
#include "qes/errors.hpp"
#include "qes/yv.hpp"

using namespace qes;

namespace {

// u = d/dt log(Y_{n-1}/Y_n) evaluated exactly at a rational t, together with
// u' and u''. Derivatives of y'/y are expanded by hand.
struct Jet {
  mpq_class u, du, ddu;
};

Jet log_derivative_jet(const ExactPoly& y, const mpq_class& t) {
  ExactPoly d1 = y.derivative(), d2 = d1.derivative(), d3 = d2.derivative();
  mpq_class f = y.eval(t), f1 = d1.eval(t), f2 = d2.eval(t), f3 = d3.eval(t);
  mpq_class g = f1 / f;                          // y'/y
  mpq_class dg = f2 / f - g * g;                 // (y'/y)'
  mpq_class ddg = f3 / f - f2 * f1 / (f * f) - 2 * g * dg;
  return {g, dg, ddg};
}

}  // namespace

TEST_CASE("first polynomials") {
  YVSequence s = yv_generate(3);
  CHECK(s.polys[0] == IntPoly{1});
  CHECK(s.polys[1] == IntPoly{0, 1});
  CHECK(s.polys[2] == IntPoly{4, 0, 0, 1});
  CHECK(s.polys[3] == IntPoly{-80, 0, 0, 20, 0, 0, 1});
}

TEST_CASE("generation matches the rational recursion") {
  const int N = 18;
  YVSequence s = yv_generate(N);
  auto ref = oracle::yv_by_division(N + 1);
  for (int n = 0; n <= N; ++n) {
    CHECK(to_exact(s.polys[n]) == ref[n]);
    CHECK(s.polys[n].degree() == n * (n + 1) / 2);
    CHECK(coefficient_support_mod3(s.polys[n]));
  }
}

TEST_CASE("Painleve II holds exactly at rational points") {
  auto y = oracle::yv_by_division(8);
  for (int n = 1; n <= 7; ++n)
    for (mpq_class t : {mpq_class(3, 7), mpq_class(-5, 2), mpq_class(11, 3)}) {
      Jet a = log_derivative_jet(y[n - 1], t), b = log_derivative_jet(y[n], t);
      mpq_class u = a.u - b.u, ddu = a.ddu - b.ddu;
      CHECK(ddu - t * u - 2 * u * u * u - n == 0);
    }
}

TEST_CASE("library residual is small") {
  for (int n = 1; n <= 6; ++n)
    for (cd t : {cd(0.7, 0.3), cd(-1.2, 2.0), cd(3.0, -0.5)}) CHECK(painleve_residual(n, t) < 1e-6);
}

TEST_CASE("painleve_rational refuses points on a pole") {
  // t = 0 is a zero of Y_1 = t
  CHECK_THROWS_AS(painleve_rational(1, {cd(0.0, 0.0)}), PoleTooClose);
  auto v = painleve_rational(1, {cd(2.0, 0.0)});
  // u_1 = -1/t
  CHECK(std::abs(v[0] + 0.5) < 1e-14);
}

TEST_CASE("zeros solve the polynomial") {
  for (int n : {4, 7, 12}) {
    PointSet z = yv_zeros(n);
    CHECK(z.size() == static_cast<std::size_t>(n * (n + 1) / 2));
    IntPoly p = yv_generate(n).polys[n];
    for (auto r : z.points) CHECK(relative_residual(p, r) < 1e-12);
    std::vector<cd> conj;
    for (auto r : z.points) conj.push_back(std::conj(r));
    CHECK(multiset_close(z.points, conj, 1e-10));
  }
}

TEST_CASE("scaling and cap") {
  CHECK(std::abs(yv_scale(8) - std::pow(4.5, 2.0 / 3.0) * 4.0) < 1e-12);
  YVZeroOptions o;
  o.cap = 5;
  CHECK_THROWS_AS(yv_zeros(6, o), DegreeCapExceeded);
}

#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "qes/branching.hpp"
#include "qes/errors.hpp"
#include "qes/resultant.hpp"
#include "qes/spectral.hpp"

using namespace qes;

TEST_CASE("smallest branching polynomials") {
  CHECK(sigma_polynomial(1) == IntPoly{0, 1});
  CHECK(sigma_polynomial(2) == IntPoly{-27, 0, 0, 16});
}

TEST_CASE("sigma polynomial vanishes exactly where Sp_n has a double root") {
  // At an integer a, disc of Sp_n(a, .) is computed independently with the
  // brute Sylvester determinant; it must vanish iff sigma does, and agree up
  // to a common constant.
  for (int n = 2; n <= 5; ++n) {
    IntPoly s = sigma_polynomial(n);
    std::optional<mpq_class> ratio;
    for (long a = -3; a <= 3; ++a) {
      IntPoly f = clear_denominators(spectral_polynomial(static_cast<int>(n), mpq_class(a)));
      mpq_class d = oracle::resultant_brute(f, f.derivative());
      mpq_class v = s.eval(a);
      if (v == 0) {
        CHECK(d == 0);
        continue;
      }
      if (!ratio) ratio = d / v;
      CHECK(d / v == *ratio);
    }
  }
}

TEST_CASE("degree, sign and mod-3 support") {
  for (int n = 1; n <= 9; ++n) {
    IntPoly s = sigma_polynomial(n);
    CHECK(s.degree() == n * (n + 1) / 2);
    CHECK(s.leading() > 0);
    CHECK(content(s) == 1);
    // invariance under a -> omega a
    int r = -1;
    for (int k = 0; k <= s.degree(); ++k) {
      if (s.coeff(k) == 0) continue;
      if (r < 0) r = k % 3;
      CHECK(k % 3 == r);
    }
  }
}

TEST_CASE("points for n = 2") {
  BranchSet b = sigma_points(2);
  std::vector<cd> expect;
  for (int k = 0; k < 3; ++k) expect.push_back(3.0 * std::pow(2.0, -4.0 / 3.0) * std::polar(1.0, 2 * M_PI * k / 3));
  CHECK(multiset_close(b.points.points, expect, 1e-10));
}

TEST_CASE("conjugation and rotation symmetry of the point set") {
  BranchSet b = sigma_points(7);
  std::vector<cd> conj, rot;
  for (auto z : b.points.points) {
    conj.push_back(std::conj(z));
    rot.push_back(z * std::polar(1.0, 2 * M_PI / 3));
  }
  CHECK(multiset_close(b.points.points, conj, 1e-9));
  CHECK(multiset_close(b.points.points, rot, 1e-9));
}

TEST_CASE("grid indexing shape") {
  for (int n = 2; n <= 8; ++n) {
    BranchSet b = sigma_points(n);
    REQUIRE(b.grid.has_value());
    std::vector<int> per_column(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < b.grid->size(); ++i) {
      const GridIndex& g = (*b.grid)[i];
      CHECK(g.row >= 1);
      CHECK(g.row <= 2 * n - 1);
      ++per_column[static_cast<std::size_t>(g.column)];
      if (std::fabs(b.points.points[i].imag()) < 1e-9) CHECK(g.row == n);
    }
    for (int j = 1; j <= n; ++j) CHECK(per_column[static_cast<std::size_t>(j)] == n + 1 - j);
  }
}

TEST_CASE("degree cap") {
  SigmaOptions o;
  o.cap = 5;
  CHECK_THROWS_AS(sigma_polynomial(6, o), DegreeCapExceeded);
}

TEST_CASE("cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "qes_sigma_cache_test";
  std::filesystem::remove_all(dir);
  Cache cache(dir);
  SigmaOptions o;
  o.cache = &cache;
  IntPoly cold = sigma_polynomial(6, o);
  CHECK(cache.load("sigma_poly", 6).has_value());
  CHECK(sigma_polynomial(6, o) == cold);
  std::filesystem::remove_all(dir);
}

TEST_CASE("set comparison") {
  PointSet a, b;
  a.points = {0.0, 1.0};
  b.points = {0.0, 1.0};
  SetComparison same = compare_sets(a, b);
  CHECK(same.hausdorff == 0.0);
  CHECK(same.mean_nn == 0.0);
  CHECK(*same.assignment_cost == 0.0);
  b.points = {cd(0, 1), cd(1, 1)};
  SetComparison up = compare_sets(a, b);
  CHECK(up.hausdorff == doctest::Approx(1.0));
  CHECK(up.mean_nn == doctest::Approx(1.0));
  CHECK(*up.assignment_cost == doctest::Approx(2.0));
  b.points = {0.0};
  SetComparison uneven = compare_sets(a, b);
  CHECK_FALSE(uneven.assignment_cost.has_value());
  CHECK(uneven.hausdorff == doctest::Approx(1.0));
}

TEST_CASE("lattice probe inside a window") {
  PointSet a, b;
  a.points = {0.0, 1.0, 10.0};
  b.points = {cd(0.1, 0), cd(1.2, 0), 10.0};
  auto pairs = lattice_probe(a, b, Window{-2, 2, -2, 2});
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].drift == doctest::Approx(0.1));
  CHECK(pairs[1].drift == doctest::Approx(0.2));
  CHECK(pairs[0].spacing == doctest::Approx(1.0));
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "qes/aberth.hpp"
#include "qes/assignment.hpp"
#include "qes/cache.hpp"
#include "qes/errors.hpp"
#include "qes/point_set.hpp"

using namespace qes;
namespace fs = std::filesystem;

TEST_CASE("complex literals") {
  CHECK(parse_complex("1-2i") == cd(1, -2));
  CHECK(parse_complex("0.5+0.25i") == cd(0.5, 0.25));
  CHECK(parse_complex("-3i") == cd(0, -3));
  CHECK(parse_complex("2") == cd(2, 0));
  CHECK(parse_complex("1e-3+2E+1i") == cd(1e-3, 20));
  CHECK_THROWS(parse_complex(""));
  CHECK_THROWS(parse_complex("abc"));
  CHECK(parse_complex(complex_to_string(cd(0.1, -7.25))) == cd(0.1, -7.25));
}

TEST_CASE("exports are deterministic and sorted") {
  PointSet s;
  s.points = {cd(1, 0), cd(-1, 2), cd(-1, -2)};
  s.sort_lex();
  CHECK(to_csv(s) == "re,im\n-1,-2\n-1,2\n1,0\n");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  PointSet back = point_set_from_json(to_json(s));
  CHECK(back.points == s.points);
  CHECK(s.scaled(2.0).points[2] == cd(0.5, 0));
}

TEST_CASE("assignment matches brute force") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 10);
  for (int m = 1; m <= 7; ++m) {
    std::vector<std::vector<double>> c(m, std::vector<double>(m));
    for (auto& row : c)
      for (auto& x : row) x = u(rng);
    double best = 0;
    oracle::brute_assignment(c, &best);
    auto got = solve_assignment(c);
    double v = 0;
    for (int i = 0; i < m; ++i) v += c[i][got[i]];
    CHECK(v == doctest::Approx(best).epsilon(1e-12));
  }
  double total = 0;
  auto p = match_points({cd(0, 0), cd(5, 0)}, {cd(5.1, 0), cd(0.1, 0)}, &total);
  CHECK(p == std::vector<int>{1, 0});
  CHECK(total == doctest::Approx(0.2));
}

TEST_CASE("Aberth roots of integer polynomials") {
  // (x-1)(x-2)(x-3)(x^2+1)
  IntPoly p{-6, 11, -12, 12, -6, 1};
  auto r = aberth_roots(p);
  std::vector<cd> expect{1.0, 2.0, 3.0, cd(0, 1), cd(0, -1)};
  CHECK(multiset_close(r.roots, expect, 1e-13));
  // x (x^3 - 2)(x^3 + 5): cube-lattice path against the generic one
  IntPoly q = IntPoly{0, 1} * IntPoly{-2, 0, 0, 1} * IntPoly{5, 0, 0, 1};
  auto fast = integer_poly_roots(q);
  auto slow = aberth_roots(q);
  CHECK(multiset_close(fast.roots, slow.roots, 1e-12));
  for (auto z : fast.roots) CHECK(relative_residual(q, z) < 1e-14);
}

TEST_CASE("Aberth on a clustered polynomial escalates precision") {
  // (x - 1)(x - 1 - 1e-20) scaled to integers
  mpz_class e("100000000000000000000");
  IntPoly p{e + 1, -(2 * e + 1), e};
  auto r = aberth_roots(p);
  CHECK(r.bits > 64);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-15);
}

TEST_CASE("cache writes are atomic and corrupt files are misses") {
  fs::path dir = fs::temp_directory_path() / "qes_cache_unit";
  fs::remove_all(dir);
  Cache c(dir);
  CHECK(c.enabled());
  CHECK_FALSE(c.load("thing", 3).has_value());
  c.store("thing", 3, {{"x", 1}});
  CHECK(c.load("thing", 3)->at("x") == 1);
  auto entries = c.list();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == "thing-3.json");
  for (const auto& f : fs::directory_iterator(dir)) CHECK(f.path().extension() == ".json");
  std::ofstream(c.file_for("broken", 1)) << "{not json";
  CHECK_FALSE(c.load("broken", 1).has_value());
  CHECK(c.clear() == 2);
  CHECK(c.list().empty());
  CHECK_FALSE(Cache().enabled());
  fs::remove_all(dir);
}

#include <doctest.h>

#include "qes/branching.hpp"
#include "qes/errors.hpp"
#include "qes/monodromy.hpp"

using namespace qes;

TEST_CASE("path primitives") {
  APath c = circle_path(2.0);
  CHECK(c.closed());
  CHECK(c.length() == doctest::Approx(4 * M_PI));
  CHECK(std::abs(std::abs(c.at(0.37)) - 2.0) < 1e-12);
  APath k = constant_path(cd(3, 0));
  CHECK(k.closed());
  PathSegment s = PathSegment::line(0.0, cd(3, 4));
  CHECK(s.length() == doctest::Approx(5.0));
  CHECK(s.distance_to(cd(0, 1)) == doctest::Approx(0.6));
  CHECK(std::abs(s.reversed().start() - cd(3, 4)) < 1e-15);
}

TEST_CASE("permutation helpers") {
  std::vector<int> p{1, 0, 2};
  CHECK(permutation_string(p) == "(2 1 3)");
  CHECK(adjacent_transposition(p) == 1);
  CHECK_FALSE(adjacent_transposition(identity_permutation(3)).has_value());
  CHECK_FALSE(adjacent_transposition({2, 1, 0}).has_value());
  CHECK(compose(p, p) == identity_permutation(3));
  std::vector<int> q{0, 2, 1};
  CHECK(compose(q, p) == std::vector<int>{2, 0, 1});
}

TEST_CASE("constant loop gives the identity") {
  MonodromyResult r = track_path(4, constant_path(cd(6, 0)));
  CHECK(r.permutation == identity_permutation(5));
}

TEST_CASE("Kac spectrum and quasihomogeneity") {
  KacReport r = kac_limit_check(8, 1.0);
  CHECK(r.kac_max_deviation < 1e-10);
  const int n = 6;
  const cd a(2.0, 1.0);
  for (double t : {0.2, 0.5, 0.9}) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> e0(kac_matrix(n, a)), e1(kac_matrix(n, a * std::polar(1.0, 2 * M_PI * t)));
    std::vector<cd> rot, other;
    for (int k = 0; k <= n; ++k) {
      rot.push_back(e0.eigenvalues()[k] * std::polar(1.0, M_PI * t));
      other.push_back(e1.eigenvalues()[k]);
    }
    CHECK(multiset_close(rot, other, 1e-9));
  }
}

TEST_CASE("large circle reverses the real spectrum") {
  MonodromyResult r = track_path(3, circle_path(200.0));
  CHECK(r.permutation == std::vector<int>{3, 2, 1, 0});
  CHECK(r.closure_error < 1e-8);
}

TEST_CASE("standard paths for n = 3") {
  BranchSet s = sigma_points(3);
  const double B = default_base(s.points.points);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    APath p = standard_path(s.points.points, i, B);
    CHECK(p.closed());
    CHECK(p.min_distance(s.points.points) > 0.0);
    CHECK(std::abs(p.at(0.0) - cd(B, 0)) < 1e-12);
  }
  MonodromyTable t = monodromy_table(s);
  REQUIRE(t.entries.size() == 6);
  for (const auto& e : t.entries) {
    auto tr = adjacent_transposition(e.permutation);
    REQUIRE(tr.has_value());
    CHECK(*tr == 3 + 1 - e.grid.column);
    CHECK(e.step_stable);
    CHECK(e.deformation_stable.value_or(false));
  }
  // Entries are ordered so that the product of all hooks is the big loop.
  MonodromyResult big = track_path(3, circle_path(B));
  CHECK(compose_word(t, big_circle_word(t)) == big.permutation);
}

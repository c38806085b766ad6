#include <doctest.h>

#include <cmath>

#include "qes/errors.hpp"
#include "qes/quaddiff.hpp"

using namespace qes;

namespace {

cd eval(const std::vector<cd>& c, cd x) {
  cd acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

}  // namespace

TEST_CASE("turning polynomial and Vieta") {
  const cd a(0.7, -0.2), L(1.1, 0.4);
  auto c = turning_polynomial(a, L);
  const cd x(0.3, 0.9);
  CHECK(std::abs(eval(c, x) - ((x * x - a) * (x * x - a) - 4.0 * (x - L))) < 1e-14);
  auto tp = turning_points(a, L);
  REQUIRE(tp.size() == 4);
  cd sum = 0, prod = 1;
  for (const auto& t : tp) {
    sum += t.z;
    prod *= t.z;
    CHECK(std::abs(eval(c, t.z)) < 1e-10);
  }
  CHECK(std::abs(sum) < 1e-12);
  CHECK(std::abs(prod - (a * a + 4.0 * L)) < 1e-12);
}

TEST_CASE("double turning point is merged") {
  // a = 0, Lambda = 3/4: (Theta - 1)^2 (Theta^2 + 2 Theta + 3)
  auto tp = turning_points(0.0, 0.75);
  REQUIRE(tp.size() == 3);
  int doubles = 0;
  for (const auto& t : tp)
    if (t.multiplicity == 2) {
      ++doubles;
      CHECK(std::abs(t.z - 1.0) < 1e-9);
    }
  CHECK(doubles == 1);
}

TEST_CASE("local ray counts are order + 2") {
  for (const auto& t : turning_points(0.0, 0.75)) CHECK(local_ray_directions(0.0, 0.75, t).size() == static_cast<std::size_t>(t.multiplicity + 2));
  for (const auto& t : turning_points(cd(0.3, 0.1), cd(0.2, 0.5))) CHECK(local_ray_directions(cd(0.3, 0.1), cd(0.2, 0.5), t).size() == 3);
}

TEST_CASE("rays are horizontal at their start") {
  const cd a(0.4, 0.0), L(0.2, 0.1);
  for (const auto& t : turning_points(a, L)) {
    auto c = turning_polynomial(a, L);
    for (cd d : local_ray_directions(a, L, t)) {
      cd z = t.z + 1e-4 * d;
      cd q = -eval(c, z) * d * d;
      CHECK(std::fabs(std::arg(q)) < 1e-2);
    }
  }
}

TEST_CASE("traced trajectory stays horizontal") {
  const cd a(0.5, 0.0), L(0.3, 0.2);
  auto c = turning_polynomial(a, L);
  Trajectory tr = trace_horizontal(a, L, cd(0.1, 0.7), cd(1, 0));
  REQUIRE(tr.points.size() > 10);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    cd q = -eval(c, tr.points[k]) * tr.tangents[k] * tr.tangents[k];
    worst = std::max(worst, std::fabs(q.imag()) / std::abs(q));
    CHECK(q.real() > 0);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("star at a = 0, Lambda = 0") {
  TrajectoryGraph g = critical_graph(0.0, 0.0);
  REQUIRE(g.turning.size() == 4);
  int centre = -1;
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(g.turning[i].z) < 1e-9) centre = static_cast<int>(i);
  REQUIRE(centre >= 0);
  for (int j = 0; j < 4; ++j)
    if (j != centre) CHECK(g.adjacency[centre][j] + g.adjacency[j][centre] >= 1);
  CHECK(g.all_on_critical_set);
  CHECK(to_json(g).contains("rays"));
}

TEST_CASE("a = 0, Lambda = 3/4: four rays leave the double point") {
  TrajectoryGraph g = critical_graph(0.0, 0.75);
  int from_double = 0;
  for (const auto& r : g.rays)
    if (g.turning[r.from].multiplicity == 2) ++from_double;
  CHECK(from_double == 4);
}

TEST_CASE("topology labels") {
  CHECK(to_string(Topology::three_legs) == "three-legs");
  CHECK(to_string(Topology::one_arc) == "one-arc");
  CHECK(to_string(Topology::singular) == "singular");
  // a straight segment is one arc
  std::vector<cd> seg;
  for (int k = 0; k < 60; ++k) seg.emplace_back(k * 0.01, 0.0);
  CHECK(classify_cloud(seg).topology == Topology::one_arc);
  // three straight legs out of the origin
  std::vector<cd> star{0.0};
  for (int leg = 0; leg < 3; ++leg)
    for (int k = 1; k <= 30; ++k) star.push_back(std::polar(k * 0.01, 2 * M_PI * leg / 3));
  CHECK(classify_cloud(star).topology == Topology::three_legs);
  // a right-angled corner is singular
  std::vector<cd> corner;
  for (int k = 0; k < 40; ++k) corner.emplace_back(k * 0.01, 0.0);
  for (int k = 1; k < 40; ++k) corner.emplace_back(0.39, k * 0.01);
  CHECK(classify_cloud(corner).topology == Topology::singular);
}

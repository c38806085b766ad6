#include "qes/quaddiff.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qes/spectral.hpp"

namespace qes {

std::vector<cd> turning_polynomial(cd a, cd lambda) {
  // (T^2 - a)^2 - 4(T - L) = T^4 - 2a T^2 - 4T + a^2 + 4L
  return {a * a + 4.0 * lambda, -4.0, -2.0 * a, 0.0, 1.0};
}

namespace {

cd eval_poly(const std::vector<cd>& c, cd x) {
  cd acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

std::vector<cd> derivative(const std::vector<cd>& c) {
  std::vector<cd> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

}  // namespace

std::vector<TurningPoint> turning_points(cd a, cd lambda, double merge_tol) {
  const auto c = turning_polynomial(a, lambda);
  Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
  for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) comp(i, 3) = -c[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(comp, false);
  std::vector<cd> r(4);
  for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  const auto dc = derivative(c);
  for (auto& x : r) {
    for (int it = 0; it < 4; ++it) {
      cd f = eval_poly(c, x), df = eval_poly(dc, x);
      if (std::abs(df) < 1e-300) break;
      cd step = f / df;
      // Newton is only linear at a multiple root; keep it from wandering.
      if (std::abs(step) > 1e-3 * (1.0 + std::abs(x))) break;
      x -= step;
    }
  }
  double scale = 1.0;
  for (const auto& x : r) scale = std::max(scale, std::abs(x));
  std::vector<TurningPoint> out;
  std::vector<char> used(4, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    if (used[i]) continue;
    cd sum = r[i];
    int m = 1;
    used[i] = 1;
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!used[j] && std::abs(r[j] - r[i]) < std::sqrt(merge_tol) * scale &&
          std::abs(eval_poly(dc, 0.5 * (r[i] + r[j]))) < merge_tol * std::pow(scale, 3) * 1e3) {
        sum += r[j];
        ++m;
        used[j] = 1;
      }
    }
    out.push_back({sum / static_cast<double>(m), m});
  }
  std::sort(out.begin(), out.end(), [](const TurningPoint& x, const TurningPoint& y) { return lex_less(x.z, y.z); });
  return out;
}

std::string to_string(TraceEnd e) {
  switch (e) {
    case TraceEnd::turning_point: return "turning_point";
    case TraceEnd::escaped: return "escaped";
    case TraceEnd::max_length: return "max_length";
    case TraceEnd::start_returned: return "start_returned";
  }
  return "?";
}

namespace {

struct Field {
  std::vector<cd> c;
  cd operator()(cd z, cd ref) const {
    cd r = std::sqrt(-eval_poly(c, z));
    double m = std::abs(r);
    if (m == 0.0) return ref;
    cd v = std::conj(r) / m;
    if ((v * std::conj(ref)).real() < 0.0) v = -v;
    return v;
  }
};

double diameter(const std::vector<TurningPoint>& tps) {
  double d = 0.0;
  for (const auto& x : tps)
    for (const auto& y : tps) d = std::max(d, std::abs(x.z - y.z));
  return d;
}

}  // namespace

Trajectory trace_horizontal(cd a, cd lambda, cd start, cd direction, const std::vector<TurningPoint>& tps,
                            const TraceOptions& opts) {
  // Dormand-Prince 5(4).
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                      e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;
  Field f{turning_polynomial(a, lambda)};
  Trajectory tr;
  cd y = start;
  cd ref = direction / std::abs(direction);
  ref = f(y, ref);
  tr.points.push_back(y);
  tr.tangents.push_back(ref);
  const double offset = opts.ignore_index >= 0 ? std::abs(start - tps[static_cast<std::size_t>(opts.ignore_index)].z) : 0.0;
  double h = std::min(opts.max_step, std::max(offset, opts.capture_radius));
  cd k1 = ref;
  while (true) {
    // Termination checks at the current point.
    double nearest = 1e300;
    for (std::size_t j = 0; j < tps.size(); ++j) {
      double dj = std::abs(y - tps[j].z);
      if (static_cast<int>(j) == opts.ignore_index) {
        if (tr.length > 4.0 * offset + 4.0 * opts.capture_radius && dj < opts.capture_radius) {
          tr.end = TraceEnd::start_returned;
          tr.end_index = static_cast<int>(j);
          return tr;
        }
        if (tr.length <= 4.0 * offset + 4.0 * opts.capture_radius) continue;
      } else if (dj < opts.capture_radius) {
        tr.end = TraceEnd::turning_point;
        tr.end_index = static_cast<int>(j);
        return tr;
      }
      nearest = std::min(nearest, dj);
    }
    if (std::abs(y) > opts.escape_radius) {
      tr.end = TraceEnd::escaped;
      return tr;
    }
    if (tr.length >= opts.max_length) {
      tr.end = TraceEnd::max_length;
      return tr;
    }
    // Do not jump over a turning point.
    double hmax = std::min(opts.max_step, std::max(0.5 * nearest, 0.25 * opts.capture_radius));
    h = std::min(h, hmax);
    cd k2 = f(y + h * (a21 * k1), k1);
    cd k3 = f(y + h * (a31 * k1 + a32 * k2), k1);
    cd k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3), k1);
    cd k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k1);
    cd k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k1);
    cd yn = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    cd k7 = f(yn, k1);
    double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    if (err <= opts.tol || h <= opts.min_step) {
      if (h <= opts.min_step && err > opts.tol)
        throw StallNearTurningPoint("trace_horizontal: step collapsed at " + complex_to_string(y));
      tr.length += h;
      y = yn;
      k1 = k7;
      tr.points.push_back(y);
      tr.tangents.push_back(k1);
    }
    double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(opts.tol / err, 0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    h = std::max(h, opts.min_step);
  }
}

Trajectory trace_horizontal(cd a, cd lambda, cd start, cd direction) {
  auto tps = turning_points(a, lambda);
  TraceOptions o;
  double diam = std::max(diameter(tps), 1e-12);
  o.capture_radius = 1e-3 * diam;
  o.escape_radius = 10.0 * std::sqrt(1.0 + std::abs(a) + std::abs(lambda));
  o.max_length = 20.0 * o.escape_radius;
  o.max_step = 0.02 * std::max(1.0, diam);
  return trace_horizontal(a, lambda, start, direction, tps, o);
}

std::vector<cd> local_ray_directions(cd a, cd lambda, const TurningPoint& tp) {
  auto c = turning_polynomial(a, lambda);
  // Leading Taylor coefficient P^(m)(z)/m! at the zero.
  std::vector<cd> d = c;
  double fact = 1.0;
  for (int k = 0; k < tp.multiplicity; ++k) {
    d = derivative(d);
    fact *= (k + 1);
  }
  cd lead = eval_poly(d, tp.z) / fact;
  const int m = tp.multiplicity;
  std::vector<cd> dirs;
  double base = -std::arg(-lead);
  for (int k = 0; k < m + 2; ++k) dirs.push_back(std::polar(1.0, (base + 2.0 * M_PI * k) / (m + 2)));
  return dirs;
}

TrajectoryGraph critical_graph(cd a, cd lambda) {
  TrajectoryGraph g;
  g.a = a;
  g.lambda = lambda;
  g.turning = turning_points(a, lambda);
  const double diam = std::max(diameter(g.turning), 1e-12);
  g.capture_radius = 1e-3 * diam;
  g.escape_radius = 10.0 * std::sqrt(1.0 + std::abs(a) + std::abs(lambda));
  const std::size_t k = g.turning.size();
  g.adjacency.assign(k, std::vector<int>(k, 0));
  TraceOptions o;
  o.capture_radius = g.capture_radius;
  o.escape_radius = g.escape_radius;
  o.max_length = 20.0 * g.escape_radius;
  o.max_step = 0.02 * std::max(1.0, diam);
  for (std::size_t i = 0; i < k; ++i) {
    auto dirs = local_ray_directions(a, lambda, g.turning[i]);
    for (std::size_t r = 0; r < dirs.size(); ++r) {
      o.ignore_index = static_cast<int>(i);
      cd start = g.turning[i].z + 5.0 * g.capture_radius * dirs[r];
      RayTrace rt{static_cast<int>(i), static_cast<int>(r), dirs[r], trace_horizontal(a, lambda, start, dirs[r], g.turning, o)};
      if (rt.path.end == TraceEnd::turning_point) g.adjacency[i][static_cast<std::size_t>(rt.path.end_index)] += 1;
      g.rays.push_back(std::move(rt));
    }
  }
  // Every turning point must be an endpoint of some finite critical trajectory.
  std::vector<char> covered(k, 0);
  for (const auto& r : g.rays) {
    if (r.path.end == TraceEnd::turning_point || r.path.end == TraceEnd::start_returned) {
      covered[static_cast<std::size_t>(r.from)] = 1;
      covered[static_cast<std::size_t>(r.path.end_index)] = 1;
    }
  }
  g.all_on_critical_set = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  return g;
}

nlohmann::json to_json(const TrajectoryGraph& g) {
  nlohmann::json j;
  j["a"] = complex_json(g.a);
  j["lambda"] = complex_json(g.lambda);
  j["capture_radius"] = format_double(g.capture_radius);
  j["escape_radius"] = format_double(g.escape_radius);
  auto tps = nlohmann::json::array();
  for (const auto& t : g.turning) tps.push_back({{"z", complex_json(t.z)}, {"multiplicity", t.multiplicity}});
  j["turning_points"] = tps;
  auto rays = nlohmann::json::array();
  for (const auto& r : g.rays) {
    auto pl = nlohmann::json::array();
    // Thin long polylines for export; endpoints are always kept.
    std::size_t stride = std::max<std::size_t>(1, r.path.points.size() / 400);
    for (std::size_t i = 0; i < r.path.points.size(); i += stride) pl.push_back(complex_json(r.path.points[i], 10));
    if (!r.path.points.empty()) pl.push_back(complex_json(r.path.points.back(), 10));
    rays.push_back({{"from", r.from},
                    {"ray", r.ray},
                    {"end", to_string(r.path.end)},
                    {"to", r.path.end_index},
                    {"length", format_double(r.path.length, 10)},
                    {"polyline", pl}});
  }
  j["rays"] = rays;
  j["adjacency"] = g.adjacency;
  j["all_on_critical_set"] = g.all_on_critical_set;
  return j;
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::three_legs: return "three-legs";
    case Topology::one_arc: return "one-arc";
    case Topology::singular: return "singular";
  }
  return "?";
}

TopologyReport classify_cloud(const std::vector<cd>& pts, const TopologyOptions& opts) {
  const std::size_t n = pts.size();
  if (n < 3) throw AmbiguousTopology("classify_cloud: too few points");
  // k-nearest-neighbour graph.
  struct Edge {
    double w;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  std::vector<double> nn(n, 1e300);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opts.knn), n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d.emplace_back(std::abs(pts[i] - pts[j]), j);
    std::partial_sort(d.begin(), d.begin() + static_cast<long>(k), d.end());
    nn[i] = d[0].first;
    for (std::size_t t = 0; t < k; ++t) edges.push_back({d[t].first, std::min(i, d[t].second), std::max(i, d[t].second)});
  }
  std::vector<double> sorted_nn = nn;
  std::nth_element(sorted_nn.begin(), sorted_nn.begin() + static_cast<long>(n / 2), sorted_nn.end());
  const double cutoff = opts.cutoff_factor * sorted_nn[n / 2];
  edges.erase(std::remove_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.w > cutoff; }), edges.end());
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });
  // Minimum spanning forest (Kruskal).
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t used = 0;
  for (const auto& e : edges) {
    std::size_t ri = find(e.i), rj = find(e.j);
    if (ri == rj) continue;
    parent[ri] = rj;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
    ++used;
  }
  if (used + 1 != n) throw AmbiguousTopology("classify_cloud: skeleton is disconnected");

  TopologyReport rep;
  std::vector<char> removed(n, 0);
  auto degree = [&](std::size_t v) {
    int d = 0;
    for (auto w : adj[v])
      if (!removed[w]) ++d;
    return d;
  };
  // Walk from a junction along a branch; returns visited nodes and the terminal node.
  auto walk = [&](std::size_t from, std::size_t first) {
    std::vector<std::size_t> nodes{first};
    std::size_t prev = from, cur = first;
    while (degree(cur) == 2) {
      std::size_t nxt = 0;
      for (auto w : adj[cur])
        if (!removed[w] && w != prev) nxt = w;
      prev = cur;
      cur = nxt;
      nodes.push_back(cur);
    }
    return nodes;
  };
  // Remove spurs: short branches from a junction that end in a leaf.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n && !changed; ++v) {
      if (removed[v] || degree(v) < 3) continue;
      for (auto w : adj[v]) {
        if (removed[w]) continue;
        auto br = walk(v, w);
        if (degree(br.back()) == 1 && static_cast<int>(br.size()) < opts.min_leg_points) {
          for (auto x : br) removed[x] = 1;
          ++rep.spurs;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> leaves, junctions;
  for (std::size_t v = 0; v < n; ++v) {
    if (removed[v]) continue;
    int d = degree(v);
    if (d == 1) leaves.push_back(v);
    if (d >= 3) junctions.push_back(v);
  }
  rep.leaves = static_cast<int>(leaves.size());
  rep.junctions = static_cast<int>(junctions.size());
  if (rep.leaves == 3 && rep.junctions == 1) {
    for (auto w : adj[junctions[0]])
      if (!removed[w]) rep.leg_points.push_back(static_cast<int>(walk(junctions[0], w).size()));
    rep.topology = Topology::three_legs;
    return rep;
  }
  if (rep.leaves == 2 && rep.junctions == 0) {
    // Order the path and look for a corner.
    std::vector<std::size_t> path{leaves[0]};
    std::size_t first = 0;
    for (auto w : adj[leaves[0]])
      if (!removed[w]) first = w;
    auto rest = walk(leaves[0], first);
    path.insert(path.end(), rest.begin(), rest.end());
    const std::size_t w = static_cast<std::size_t>(opts.kink_window);
    double worst = 0.0;
    for (std::size_t i = w; i + w < path.size(); ++i) {
      cd u = pts[path[i]] - pts[path[i - w]];
      cd v = pts[path[i + w]] - pts[path[i]];
      worst = std::max(worst, std::fabs(std::arg(v / u)));
    }
    rep.max_turn_degrees = worst * 180.0 / M_PI;
    rep.topology = (rep.spurs > 0 || rep.max_turn_degrees > opts.kink_degrees) ? Topology::singular : Topology::one_arc;
    return rep;
  }
  throw AmbiguousTopology("classify_cloud: " + std::to_string(rep.leaves) + " leaves and " +
                          std::to_string(rep.junctions) + " junctions fit no pattern");
}

TopologyReport support_topology(cd a, const TopologyOptions& opts) {
  PointSet s = scaled_spectrum(opts.n_probe, a, ScalingRule::two_thirds);
  return classify_cloud(s.points, opts);
}

}  // namespace qes

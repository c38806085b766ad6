#pragma once

// Horizontal trajectories of the quadratic differential -P(Theta) dTheta^2 with
// P(Theta) = (Theta^2 - a)^2 - 4(Theta - Lambda), and a classifier for the
// shape of the limiting spectral support.

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "qes/point_set.hpp"

namespace qes {

/// Ascending coefficients of P in Theta.
std::vector<cd> turning_polynomial(cd a, cd lambda);

struct TurningPoint {
  cd z;
  int multiplicity = 1;
};

/// Roots of P, merged into multiple roots when they agree to merge_tol
/// (relative to the root scale).
std::vector<TurningPoint> turning_points(cd a, cd lambda, double merge_tol = 1e-7);

enum class TraceEnd { turning_point, escaped, max_length, start_returned };
std::string to_string(TraceEnd e);

struct Trajectory {
  std::vector<cd> points;
  std::vector<cd> tangents;  // unit dTheta/ds at each point
  TraceEnd end = TraceEnd::max_length;
  int end_index = -1;        // turning point reached, if any
  double length = 0.0;
};

struct TraceOptions {
  double capture_radius = 1e-3;  // absolute
  double escape_radius = 10.0;
  double max_length = 200.0;
  double tol = 1e-10;            // local error per step
  double max_step = 0.02;
  double min_step = 1e-13;
  int ignore_index = -1;         // turning point the trace starts from
};

/// Arc-length integration of dTheta/ds = conj(r)/|r|, r^2 = -P, with r's sign
/// kept continuous and initially aligned with direction. Stops on capture by a
/// turning point, escape, or max length. Throws StallNearTurningPoint if the
/// step collapses away from every turning point.
Trajectory trace_horizontal(cd a, cd lambda, cd start, cd direction, const std::vector<TurningPoint>& tps,
                            const TraceOptions& opts);

/// Convenience overload computing turning points and the default radii.
Trajectory trace_horizontal(cd a, cd lambda, cd start, cd direction);

struct RayTrace {
  int from = 0;        // turning point index
  int ray = 0;         // ray index at that point
  cd initial_direction;
  Trajectory path;
};

struct TrajectoryGraph {
  cd a, lambda;
  std::vector<TurningPoint> turning;
  std::vector<RayTrace> rays;
  std::vector<std::vector<int>> adjacency;  // rays from i ending at j
  double capture_radius = 0.0, escape_radius = 0.0;
  /// Every turning point is an endpoint of a trajectory joining turning points.
  bool all_on_critical_set = false;
};

/// Directions of the m+2 horizontal rays leaving a zero of order m.
std::vector<cd> local_ray_directions(cd a, cd lambda, const TurningPoint& tp);

TrajectoryGraph critical_graph(cd a, cd lambda);
nlohmann::json to_json(const TrajectoryGraph& g);

enum class Topology { three_legs, one_arc, singular };
std::string to_string(Topology t);

struct TopologyOptions {
  int n_probe = 200;
  int knn = 4;
  double cutoff_factor = 3.0;   // edges longer than this times the median NN distance are dropped
  int min_leg_points = 4;       // shorter leaf branches count as spurs
  int kink_window = 8;          // points on each side for the turning-angle chord
  double kink_degrees = 15.0;
};

struct TopologyReport {
  Topology topology = Topology::one_arc;
  int leaves = 0, junctions = 0, spurs = 0;
  std::vector<int> leg_points;  // per leg at the junction, when there is one
  double max_turn_degrees = 0.0;
};

/// Skeleton analysis of a point cloud; throws AmbiguousTopology when the
/// skeleton fits none of the patterns.
TopologyReport classify_cloud(const std::vector<cd>& pts, const TopologyOptions& opts = {});

/// classify_cloud on the spectrum of M_n(a n^(2/3)) scaled by n^(4/3).
TopologyReport support_topology(cd a, const TopologyOptions& opts = {});

}  // namespace qes

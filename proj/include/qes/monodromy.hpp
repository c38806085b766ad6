#pragma once

// Continuation of the spectrum of M_n(a) along closed loops in the a-plane
// and the permutations this induces on the real spectrum at the base point.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qes/branching.hpp"
#include "qes/point_set.hpp"

namespace qes {

struct PathSegment {
  enum class Kind { line, arc } kind = Kind::line;
  cd from, to;           // line endpoints
  cd center;             // arc data
  double radius = 0.0, theta0 = 0.0, sweep = 0.0;

  static PathSegment line(cd from, cd to);
  static PathSegment arc(cd center, double radius, double theta0, double sweep);
  double length() const;
  cd at(double u) const;  // u in [0, 1]
  cd start() const { return at(0.0); }
  cd end() const { return at(1.0); }
  PathSegment reversed() const;
  double distance_to(cd p) const;
};

/// Piecewise linear-and-circular loop, parametrised by normalised arc length.
struct APath {
  std::vector<PathSegment> segments;

  double length() const;
  cd at(double t) const;
  bool closed(double tol = 1e-12) const;
  double distance_to(cd p) const;
  /// Smallest distance to the points, skipping index `skip` (if any).
  double min_distance(const std::vector<cd>& pts, std::optional<std::size_t> skip = std::nullopt) const;
};

APath constant_path(cd base);
/// a = R e^{2 pi i t}, starting and ending at R.
APath circle_path(double R);

struct HookOptions {
  double circle_factor = 0.3;     // circle radius / nearest-neighbour distance of sigma
  double bump_factor = 0.3;       // detour radius / nearest-neighbour distance of the avoided point
  double clearance_factor = 0.05; // required distance / local spacing
  double floor_factor = 1e-3;     // auto-shrinking stops here
  bool deform = false;            // homotopic variant: kinked vertical leg, smaller circle
};

/// The hook from B: up or down to Im sigma, left to the circle around sigma,
/// once around it counterclockwise, and back the same way. Points of Sigma
/// near the horizontal leg are passed on the side the straight leg would pass
/// them; points exactly on it (the real ones) are passed above.
APath standard_path(const std::vector<cd>& sigma, std::size_t index, double B, const HookOptions& opts = {});
/// Same, addressed by grid label.
APath standard_path(const BranchSet& s, int row, int column, double B, const HookOptions& opts = {});

/// 2 max|Sigma_n| + 1.
double default_base(const std::vector<cd>& sigma);

struct TrackOptions {
  int steps = 200;             // initial (and largest) number of steps
  double motion_factor = 0.3;  // frame motion must stay under this times the smallest gap
  double min_step = 1e-9;
  bool keep_frames = false;
};

struct MonodromyResult {
  std::vector<int> permutation;   // 0-based: the eigenvalue at sorted position k ends at position permutation[k]
  double min_gap = 0.0;
  double closure_error = 0.0;     // start vs end multiset after matching
  int frames = 0;
  std::vector<std::vector<cd>> traces;  // per frame, in tracked order (keep_frames)
};

MonodromyResult track_path(int n, const APath& path, const TrackOptions& opts = {});

/// One-line notation, 1-based.
std::string permutation_string(const std::vector<int>& p);
/// If p is a transposition (k, k+1) of adjacent positions, returns k (1-based).
std::optional<int> adjacent_transposition(const std::vector<int>& p);
/// q after p: (q o p)[k] = q[p[k]].
std::vector<int> compose(const std::vector<int>& q, const std::vector<int>& p);
std::vector<int> identity_permutation(std::size_t m);

/// Sylvester-Kac matrix (tridiagonal, super k a / n, sub (n-k+1)/n).
Eigen::MatrixXcd kac_matrix(int n, cd a);

struct KacReport {
  int n = 0;
  cd a;
  std::vector<cd> scaled;   // eigenvalues of M_n(a) divided by n sqrt(a), sorted by real part
  double max_deviation = 0.0;      // from the grid -1 + 2k/n
  double kac_max_deviation = 0.0;  // eigenvalues of kac_matrix(n, a)/sqrt(a) vs the same grid
};
KacReport kac_limit_check(int n, cd a);

struct TableEntry {
  std::size_t index = 0;  // into sigma
  cd sigma;
  GridIndex grid;
  std::vector<int> permutation;
  double min_gap = 0.0;
  bool step_stable = false;
  std::optional<bool> deformation_stable;
};

struct MonodromyTable {
  int n = 0;
  double base = 0.0;
  std::vector<cd> sigma;
  std::vector<TableEntry> entries;  // sorted by descending effective height
};

struct TableOptions {
  HookOptions hook;
  TrackOptions track;
  bool check_deformation = true;
  int jobs = 1;
};

/// Requires the grid labels of Sigma_n.
MonodromyTable monodromy_table(const BranchSet& s, std::optional<double> base = std::nullopt,
                               const TableOptions& opts = {});

/// Product of standard-path permutations for a word of entry positions, applied left to right.
std::vector<int> compose_word(const MonodromyTable& t, const std::vector<std::size_t>& word);
/// The word going once around all of Sigma_n counterclockwise from the base.
std::vector<std::size_t> big_circle_word(const MonodromyTable& t);

nlohmann::json to_json(const MonodromyResult& r, const std::string& path_id);
nlohmann::json to_json(const MonodromyTable& t);
nlohmann::json to_json(const KacReport& r);

}  // namespace qes

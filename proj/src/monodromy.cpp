#include "qes/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qes/assignment.hpp"
#include "qes/parallel.hpp"
#include "qes/spectral.hpp"

namespace qes {

PathSegment PathSegment::line(cd from, cd to) {
  PathSegment s;
  s.kind = Kind::line;
  s.from = from;
  s.to = to;
  return s;
}

PathSegment PathSegment::arc(cd center, double radius, double theta0, double sweep) {
  PathSegment s;
  s.kind = Kind::arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.sweep = sweep;
  return s;
}

double PathSegment::length() const {
  return kind == Kind::line ? std::abs(to - from) : radius * std::fabs(sweep);
}

cd PathSegment::at(double u) const {
  if (kind == Kind::line) return from + u * (to - from);
  return center + std::polar(radius, theta0 + u * sweep);
}

PathSegment PathSegment::reversed() const {
  if (kind == Kind::line) return line(to, from);
  return arc(center, radius, theta0 + sweep, -sweep);
}

double PathSegment::distance_to(cd p) const {
  if (kind == Kind::line) {
    cd d = to - from;
    double len2 = std::norm(d);
    double u = len2 == 0.0 ? 0.0 : std::clamp(((p - from) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (from + u * d));
  }
  // Angle of p measured along the sweep direction from theta0.
  double phi = std::arg(p - center) - theta0;
  if (sweep < 0) phi = -phi;
  phi = std::fmod(phi, 2.0 * M_PI);
  if (phi < 0) phi += 2.0 * M_PI;
  if (phi <= std::fabs(sweep)) return std::fabs(std::abs(p - center) - radius);
  return std::min(std::abs(p - start()), std::abs(p - end()));
}

double APath::length() const {
  double l = 0.0;
  for (const auto& s : segments) l += s.length();
  return l;
}

cd APath::at(double t) const {
  if (segments.empty()) return 0.0;
  const double total = length();
  if (total == 0.0) return segments.front().start();
  double target = std::clamp(t, 0.0, 1.0) * total;
  for (const auto& s : segments) {
    double l = s.length();
    if (target <= l) return s.at(l == 0.0 ? 0.0 : target / l);
    target -= l;
  }
  return segments.back().end();
}

bool APath::closed(double tol) const {
  if (segments.empty()) return true;
  for (std::size_t i = 0; i + 1 < segments.size(); ++i)
    if (std::abs(segments[i].end() - segments[i + 1].start()) > tol * (1.0 + std::abs(segments[i].end()))) return false;
  return std::abs(segments.back().end() - segments.front().start()) <= tol * (1.0 + std::abs(segments.front().start()));
}

double APath::distance_to(cd p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) d = std::min(d, s.distance_to(p));
  return d;
}

double APath::min_distance(const std::vector<cd>& pts, std::optional<std::size_t> skip) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!skip || *skip != i) d = std::min(d, distance_to(pts[i]));
  return d;
}

APath constant_path(cd base) { return APath{{PathSegment::line(base, base)}}; }

APath circle_path(double R) { return APath{{PathSegment::arc(0.0, R, 0.0, 2.0 * M_PI)}}; }

double default_base(const std::vector<cd>& sigma) {
  double m = 0.0;
  for (const auto& z : sigma) m = std::max(m, std::abs(z));
  return 2.0 * m + 1.0;
}

namespace {

std::vector<double> spacings(const std::vector<cd>& pts) {
  std::vector<double> s(pts.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j) s[i] = std::min(s[i], std::abs(pts[i] - pts[j]));
  return s;
}

// Builds the hook with the given scale on circle and detour radii; returns
// nullopt if detours overlap or clearance fails.
std::optional<APath> build_hook(const std::vector<cd>& sigma, std::size_t index, double B, const HookOptions& opts,
                                const std::vector<double>& spacing, double shrink) {
  const cd s = sigma[index];
  const double h = s.imag();
  const double circle_factor = opts.deform ? 0.6 * opts.circle_factor : opts.circle_factor;
  const double r = shrink * circle_factor * spacing[index];
  struct Detour {
    double x, R;
    bool up;
  };
  std::vector<Detour> detours;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (k == index) continue;
    const cd p = sigma[k];
    const double rho = shrink * opts.bump_factor * spacing[k];
    const double dy = p.imag() - h;
    if (std::fabs(dy) >= rho || p.real() + rho + std::fabs(dy) <= s.real() + r) continue;
    if (p.real() > B) continue;
    // Keep to the side the straight leg passes on; points on the leg are passed above.
    detours.push_back({p.real(), rho + std::fabs(dy), !(dy > 0.0)});
  }
  std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.x > b.x; });
  double right = B;
  for (const auto& d : detours) {
    if (d.x + d.R >= right || d.x - d.R <= s.real() + r) return std::nullopt;
    right = d.x - d.R;
  }
  std::vector<PathSegment> out;
  const cd corner(B, h);
  if (opts.deform) {
    // Kinked vertical leg through a point further right; no branching point lies there.
    cd mid(B + 0.5 * (1.0 + std::fabs(h)), 0.5 * h);
    out.push_back(PathSegment::line(B, mid));
    out.push_back(PathSegment::line(mid, corner));
  } else {
    out.push_back(PathSegment::line(B, corner));
  }
  cd cur = corner;
  for (const auto& d : detours) {
    cd c(d.x, h);
    out.push_back(PathSegment::line(cur, c + d.R));
    out.push_back(PathSegment::arc(c, d.R, 0.0, d.up ? M_PI : -M_PI));
    cur = c - d.R;
  }
  out.push_back(PathSegment::line(cur, s + r));
  const std::size_t approach = out.size();
  out.push_back(PathSegment::arc(s, r, 0.0, 2.0 * M_PI));
  for (std::size_t k = approach; k-- > 0;) out.push_back(out[k].reversed());
  // Drop degenerate pieces.
  APath path;
  for (auto& seg : out)
    if (seg.length() > 0.0) path.segments.push_back(seg);
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (k == index) continue;
    if (path.distance_to(sigma[k]) < opts.clearance_factor * spacing[k] * std::min(1.0, shrink * 4.0)) return std::nullopt;
  }
  return path;
}

}  // namespace

APath standard_path(const std::vector<cd>& sigma, std::size_t index, double B, const HookOptions& opts) {
  if (index >= sigma.size()) throw Error("standard_path: index out of range");
  const double maxre = std::accumulate(sigma.begin(), sigma.end(), -std::numeric_limits<double>::infinity(),
                                       [](double m, const cd& z) { return std::max(m, z.real()); });
  if (!(B > maxre)) throw Error("standard_path: base must lie right of every branching point");
  const auto spacing = spacings(sigma);
  if (sigma.size() == 1) {
    const double r = 0.5 * std::fabs(B - sigma[0].real());
    const double rr = opts.deform ? 0.6 * r : r;
    APath p;
    p.segments.push_back(PathSegment::line(B, sigma[0] + rr));
    p.segments.push_back(PathSegment::arc(sigma[0], rr, 0.0, 2.0 * M_PI));
    p.segments.push_back(PathSegment::line(sigma[0] + rr, B));
    return p;
  }
  for (double shrink = 1.0; shrink >= opts.floor_factor; shrink *= 0.5)
    if (auto p = build_hook(sigma, index, B, opts, spacing, shrink)) return *p;
  throw ClearanceViolation("standard_path: no clear hook to " + complex_to_string(sigma[index]));
}

APath standard_path(const BranchSet& s, int row, int column, double B, const HookOptions& opts) {
  if (!s.grid) throw IndexingAmbiguity("standard_path: Sigma_" + std::to_string(s.n) + " has no grid labels");
  for (std::size_t k = 0; k < s.grid->size(); ++k)
    if ((*s.grid)[k].row == row && (*s.grid)[k].column == column) return standard_path(s.points.points, k, B, opts);
  throw Error("standard_path: no branching point at row " + std::to_string(row) + ", column " + std::to_string(column));
}

namespace {

std::vector<cd> spectrum_at(int n, cd a) { return dense_eigenvalues(build_matrix(n, a).dense()).values; }

double min_gap(const std::vector<cd>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

std::vector<std::size_t> lex_order(const std::vector<cd>& v) {
  std::vector<std::size_t> o(v.size());
  std::iota(o.begin(), o.end(), 0);
  std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return lex_less(v[a], v[b]); });
  return o;
}

}  // namespace

MonodromyResult track_path(int n, const APath& path, const TrackOptions& opts) {
  if (!path.closed(1e-9)) throw Error("track_path: path is not closed");
  MonodromyResult res;
  std::vector<cd> start = spectrum_at(n, path.at(0.0));
  std::sort(start.begin(), start.end(), lex_less);
  std::vector<cd> cur = start;
  res.min_gap = min_gap(cur);
  if (opts.keep_frames) res.traces.push_back(cur);
  const double hmax = 1.0 / std::max(1, opts.steps);
  double s = 0.0, h = hmax;
  int frames = 1;
  while (s < 1.0) {
    h = std::min(h, 1.0 - s);
    std::vector<cd> next = spectrum_at(n, path.at(s + h));
    auto perm = match_points(cur, next);
    std::vector<cd> cand(cur.size());
    double motion = 0.0;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      cand[k] = next[static_cast<std::size_t>(perm[k])];
      motion = std::max(motion, std::abs(cand[k] - cur[k]));
    }
    const double gap = min_gap(cur);
    if (motion <= opts.motion_factor * gap || cur.size() < 2) {
      s = (h >= 1.0 - s) ? 1.0 : s + h;
      cur = std::move(cand);
      res.min_gap = std::min(res.min_gap, min_gap(cur));
      ++frames;
      if (opts.keep_frames) res.traces.push_back(cur);
      h = std::min(hmax, 1.5 * h);
    } else {
      h *= 0.5;
      if (h < opts.min_step)
        throw CollisionUnresolved("track_path: step fell below " + format_double(opts.min_step, 3) + " near a = " +
                                  complex_to_string(path.at(s)));
    }
  }
  res.frames = frames;
  // Position of each tracked eigenvalue in the sorted end spectrum.
  auto order = lex_order(cur);
  res.permutation.assign(cur.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) res.permutation[order[pos]] = static_cast<int>(pos);
  std::vector<cd> end = cur;
  std::sort(end.begin(), end.end(), lex_less);
  for (std::size_t k = 0; k < end.size(); ++k) res.closure_error = std::max(res.closure_error, std::abs(end[k] - start[k]));
  return res;
}

std::string permutation_string(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i] + 1);
  }
  return s + ")";
}

std::optional<int> adjacent_transposition(const std::vector<int>& p) {
  std::optional<int> found;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == static_cast<int>(i)) continue;
    if (i + 1 < p.size() && p[i] == static_cast<int>(i + 1) && p[i + 1] == static_cast<int>(i)) {
      if (found) return std::nullopt;
      found = static_cast<int>(i + 1);
      ++i;
      continue;
    }
    return std::nullopt;
  }
  return found;
}

std::vector<int> compose(const std::vector<int>& q, const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[k] = q[static_cast<std::size_t>(p[k])];
  return r;
}

std::vector<int> identity_permutation(std::size_t m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Eigen::MatrixXcd kac_matrix(int n, cd a) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  const double nn = n;
  for (int i = 0; i < n; ++i) {
    m(i, i + 1) = static_cast<double>(i + 1) * a / nn;
    m(i + 1, i) = static_cast<double>(n - i) / nn;
  }
  return m;
}

namespace {

double grid_deviation(const std::vector<cd>& v, int n) {
  std::vector<cd> grid;
  for (int k = 0; k <= n; ++k) grid.emplace_back(-1.0 + 2.0 * k / n, 0.0);
  auto perm = match_points(v, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) worst = std::max(worst, std::abs(v[k] - grid[static_cast<std::size_t>(perm[k])]));
  return worst;
}

}  // namespace

KacReport kac_limit_check(int n, cd a) {
  if (a == cd(0.0, 0.0)) throw Error("kac_limit_check: a must be nonzero");
  KacReport r;
  r.n = n;
  r.a = a;
  const cd root = std::sqrt(a);
  for (const auto& z : eigenvalues(n, a).points) r.scaled.push_back(z / (static_cast<double>(n) * root));
  std::sort(r.scaled.begin(), r.scaled.end(), lex_less);
  r.max_deviation = grid_deviation(r.scaled, n);
  std::vector<cd> kac;
  for (const auto& z : dense_eigenvalues(kac_matrix(n, a)).values) kac.push_back(z / root);
  r.kac_max_deviation = grid_deviation(kac, n);
  return r;
}

MonodromyTable monodromy_table(const BranchSet& s, std::optional<double> base, const TableOptions& opts) {
  if (!s.grid) throw IndexingAmbiguity("monodromy_table: Sigma_" + std::to_string(s.n) + " has no grid labels");
  MonodromyTable t;
  t.n = s.n;
  t.sigma = s.points.points;
  t.base = base ? *base : default_base(t.sigma);
  std::vector<std::size_t> order(t.sigma.size());
  std::iota(order.begin(), order.end(), 0);
  // Descending height; on the real axis the hooks pass above points to their right.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cd x = t.sigma[a], y = t.sigma[b];
    if (x.imag() != y.imag()) return x.imag() > y.imag();
    return x.real() < y.real();
  });
  t.entries.resize(order.size());
  parallel_for(order.size(), opts.jobs, [&](std::size_t e) {
    TableEntry& te = t.entries[e];
    te.index = order[e];
    te.sigma = t.sigma[te.index];
    te.grid = (*s.grid)[te.index];
    APath path = standard_path(t.sigma, te.index, t.base, opts.hook);
    TrackOptions tr = opts.track;
    MonodromyResult r1 = track_path(s.n, path, tr);
    for (int attempt = 0; attempt < 3; ++attempt) {
      tr.steps *= 2;
      MonodromyResult r2 = track_path(s.n, path, tr);
      if (r2.permutation == r1.permutation) {
        te.step_stable = true;
        break;
      }
      r1 = std::move(r2);
    }
    te.permutation = r1.permutation;
    te.min_gap = r1.min_gap;
    if (opts.check_deformation) {
      HookOptions h = opts.hook;
      h.deform = true;
      MonodromyResult rd = track_path(s.n, standard_path(t.sigma, te.index, t.base, h), opts.track);
      te.deformation_stable = rd.permutation == te.permutation;
    }
  });
  return t;
}

std::vector<int> compose_word(const MonodromyTable& t, const std::vector<std::size_t>& word) {
  std::vector<int> total = identity_permutation(static_cast<std::size_t>(t.n + 1));
  for (std::size_t w : word) total = compose(t.entries.at(w).permutation, total);
  return total;
}

std::vector<std::size_t> big_circle_word(const MonodromyTable& t) {
  std::vector<std::size_t> w(t.entries.size());
  std::iota(w.begin(), w.end(), 0);
  return w;
}

nlohmann::json to_json(const MonodromyResult& r, const std::string& path_id) {
  nlohmann::json j;
  j["path_id"] = path_id;
  j["permutation"] = permutation_string(r.permutation);
  j["min_gap"] = format_double(r.min_gap, 10);
  j["closure_error"] = format_double(r.closure_error, 3);
  if (!r.traces.empty()) {
    auto frames = nlohmann::json::array();
    std::size_t stride = std::max<std::size_t>(1, r.traces.size() / 200);
    for (std::size_t f = 0; f < r.traces.size(); f += stride) {
      auto row = nlohmann::json::array();
      for (const auto& z : r.traces[f]) row.push_back(complex_json(z, 10));
      frames.push_back(row);
    }
    j["frames"] = frames;
  }
  return j;
}

nlohmann::json to_json(const MonodromyTable& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["base"] = format_double(t.base, 12);
  auto arr = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json x;
    x["sigma"] = complex_json(e.sigma, 12);
    x["row"] = e.grid.row;
    x["column"] = e.grid.column;
    x["permutation"] = permutation_string(e.permutation);
    auto tr = adjacent_transposition(e.permutation);
    x["transposition"] = tr ? nlohmann::json(std::vector<int>{*tr, *tr + 1}) : nlohmann::json();
    x["min_gap"] = format_double(e.min_gap, 6);
    x["step_stable"] = e.step_stable;
    x["deformation_stable"] = e.deformation_stable ? nlohmann::json(*e.deformation_stable) : nlohmann::json();
    arr.push_back(x);
  }
  j["entries"] = arr;
  return j;
}

nlohmann::json to_json(const KacReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["a"] = complex_json(r.a);
  auto pts = nlohmann::json::array();
  for (const auto& z : r.scaled) pts.push_back(complex_json(z, 12));
  j["scaled_roots"] = pts;
  j["max_deviation"] = format_double(r.max_deviation, 6);
  j["kac_max_deviation"] = format_double(r.kac_max_deviation, 6);
  return j;
}

}  // namespace qes

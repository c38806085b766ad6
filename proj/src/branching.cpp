#include "qes/branching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/assignment.hpp"
#include "qes/resultant.hpp"
#include "qes/spectral.hpp"

namespace qes {

IntPoly sigma_polynomial(int n, const SigmaOptions& opts) {
  if (n < 1) throw Error("sigma_polynomial: n must be positive");
  if (n > opts.cap)
    throw DegreeCapExceeded("sigma_polynomial: n = " + std::to_string(n) + " exceeds cap " + std::to_string(opts.cap));
  const int expected = n * (n + 1) / 2;
  if (opts.cache) {
    if (auto j = opts.cache->load("sigma_poly", n)) {
      IntPoly p = int_poly_from_strings((*j)["coefficients"].get<std::vector<std::string>>(), "a");
      if (p.degree() == expected) return p;
    }
  }
  IntPoly d = discriminant_lambda(spectral_polynomial_symbolic(n), expected, opts.jobs);
  if (d.degree() != expected)
    throw DegreeMismatch("sigma_polynomial: degree " + std::to_string(d.degree()) + ", expected " +
                         std::to_string(expected));
  IntPoly p = primitive_part(d);
  if (p.leading() < 0) p = -p;
  p.set_var("a");
  if (opts.cache) opts.cache->store("sigma_poly", n, {{"n", n}, {"coefficients", coefficient_strings(p)}});
  return p;
}

namespace {

// Splits sorted values into k bands at the k-1 widest gaps. Returns the band
// of each input and the separation ratio (narrowest cut / widest kept gap).
std::pair<std::vector<int>, double> gap_bands(const std::vector<double>& v, int k) {
  const std::size_t m = v.size();
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<std::pair<double, std::size_t>> gaps;
  for (std::size_t i = 0; i + 1 < m; ++i) gaps.emplace_back(v[order[i + 1]] - v[order[i]], i);
  std::stable_sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::size_t cuts = static_cast<std::size_t>(k - 1);
  std::vector<char> cut_after(m, 0);
  double narrowest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cuts && c < gaps.size(); ++c) {
    cut_after[gaps[c].second] = 1;
    narrowest = std::min(narrowest, gaps[c].first);
  }
  const double widest_kept = cuts < gaps.size() ? gaps[cuts].first : 0.0;
  std::vector<int> band(m);
  int b = 0;
  for (std::size_t i = 0; i < m; ++i) {
    band[order[i]] = b;
    if (cut_after[i]) ++b;
  }
  const double ratio = widest_kept > 0.0 ? narrowest / widest_kept : std::numeric_limits<double>::infinity();
  return {band, ratio};
}

constexpr double kBandSeparation = 1.2;

}  // namespace

std::vector<GridIndex> index_grid(const std::vector<cd>& points, int n) {
  const std::size_t expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
  if (points.size() != expected) throw IndexingAmbiguity("index_grid: expected " + std::to_string(expected) + " points");
  std::vector<GridIndex> out(points.size());
  if (n == 1) {
    out[0] = {1, 1};
    return out;
  }
  std::vector<double> re, im;
  for (const auto& z : points) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  auto [cols, cratio] = gap_bands(re, n);
  if (cratio < kBandSeparation)
    throw IndexingAmbiguity("index_grid: column bands overlap (separation " + format_double(cratio, 3) + ")");
  std::vector<int> size(static_cast<std::size_t>(n), 0);
  for (int c : cols) ++size[static_cast<std::size_t>(c)];
  for (int j = 0; j < n; ++j)
    if (size[static_cast<std::size_t>(j)] != n - j)
      throw IndexingAmbiguity("index_grid: column " + std::to_string(j + 1) + " has " +
                              std::to_string(size[static_cast<std::size_t>(j)]) + " points, expected " +
                              std::to_string(n - j));
  auto [rows, rratio] = gap_bands(im, 2 * n - 1);
  if (rratio < kBandSeparation)
    throw IndexingAmbiguity("index_grid: row bands overlap (separation " + format_double(rratio, 3) + ")");
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = {rows[i] + 1, cols[i] + 1};
    const double tol = 1e-8 * std::max(1.0, std::abs(points[i]));
    if (std::fabs(points[i].imag()) < tol && out[i].row != n)
      throw IndexingAmbiguity("index_grid: real point " + complex_to_string(points[i]) + " is not in the middle row");
  }
  return out;
}

BranchSet sigma_points(int n, const SigmaOptions& opts) {
  BranchSet s;
  s.n = n;
  s.disc_poly = sigma_polynomial(n, opts);
  AberthResult r = integer_poly_roots(s.disc_poly, opts.aberth);
  s.points.points = std::move(r.roots);
  s.points.sort_lex();
  s.points.label = "Sigma_" + std::to_string(n);
  double worst = 0.0;
  for (const auto& z : s.points.points) worst = std::max(worst, relative_residual(s.disc_poly, z, std::max(r.bits, 128L)));
  s.points.meta["n"] = n;
  s.points.meta["residual"] = format_double(worst, 6);
  s.points.meta["bits"] = r.bits;
  try {
    s.grid = index_grid(s.points.points, n);
  } catch (const IndexingAmbiguity& e) {
    s.grid_error = e.what();
  }
  return s;
}

double sigma_scale(int n) { return std::cbrt(27.0 / 4.0) * std::pow(static_cast<double>(n), 2.0 / 3.0); }

PointSet scaled_sigma(int n, const SigmaOptions& opts) {
  BranchSet s = sigma_points(n, opts);
  PointSet out = s.points.scaled(sigma_scale(n));
  out.label = "scaled Sigma_" + std::to_string(n);
  return out;
}

namespace {

double directed_nn(const std::vector<cd>& a, const std::vector<cd>& b, double* mean) {
  double worst = 0.0, sum = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
    sum += best;
  }
  *mean = a.empty() ? 0.0 : sum / static_cast<double>(a.size());
  return worst;
}

}  // namespace

SetComparison compare_sets(const PointSet& a, const PointSet& b) {
  SetComparison c;
  c.size_a = a.size();
  c.size_b = b.size();
  if (a.points.empty() || b.points.empty()) {
    c.hausdorff = (a.points.empty() && b.points.empty()) ? 0.0 : std::numeric_limits<double>::infinity();
    c.mean_nn = c.hausdorff;
    if (a.size() == b.size()) c.assignment_cost = 0.0;
    return c;
  }
  double mab = 0.0, mba = 0.0;
  const double hab = directed_nn(a.points, b.points, &mab);
  const double hba = directed_nn(b.points, a.points, &mba);
  c.hausdorff = std::max(hab, hba);
  c.mean_nn = 0.5 * (mab + mba);
  if (a.size() == b.size()) {
    double cost = 0.0;
    match_points(a.points, b.points, &cost);
    c.assignment_cost = cost;
  }
  return c;
}

nlohmann::json to_json(const SetComparison& c) {
  nlohmann::json j;
  j["size_a"] = c.size_a;
  j["size_b"] = c.size_b;
  j["hausdorff"] = format_double(c.hausdorff, 12);
  j["mean_nn"] = format_double(c.mean_nn, 12);
  j["assignment_cost"] = c.assignment_cost ? nlohmann::json(format_double(*c.assignment_cost, 12)) : nlohmann::json();
  return j;
}

std::vector<LatticePair> lattice_probe(const PointSet& a, const PointSet& b, const Window& w) {
  std::vector<LatticePair> out;
  std::vector<cd> bw;
  for (const auto& z : b.points)
    if (w.contains(z)) bw.push_back(z);
  if (bw.empty()) return out;
  for (const auto& x : a.points) {
    if (!w.contains(x)) continue;
    LatticePair p;
    p.from = x;
    p.drift = std::numeric_limits<double>::infinity();
    for (const auto& y : bw)
      if (std::abs(x - y) < p.drift) {
        p.drift = std::abs(x - y);
        p.to = y;
      }
    p.spacing = std::numeric_limits<double>::infinity();
    for (const auto& y : a.points)
      if (y != x) p.spacing = std::min(p.spacing, std::abs(x - y));
    out.push_back(p);
  }
  return out;
}

nlohmann::json to_json(const BranchSet& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["disc_poly"] = coefficient_strings(s.disc_poly);
  j["points"] = to_json(s.points);
  if (s.grid) {
    auto g = nlohmann::json::array();
    for (const auto& x : *s.grid) g.push_back({x.row, x.column});
    j["grid"] = g;
  } else {
    j["grid"] = nullptr;
    j["grid_error"] = s.grid_error;
  }
  return j;
}

nlohmann::json to_json(const std::vector<LatticePair>& pairs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs)
    arr.push_back({{"from", complex_json(p.from)},
                   {"to", complex_json(p.to)},
                   {"drift", format_double(p.drift, 12)},
                   {"spacing", format_double(p.spacing, 12)}});
  return arr;
}

}  // namespace qes

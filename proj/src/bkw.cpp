#include "qes/bkw.hpp"

#include <algorithm>
#include <cmath>

#include "qes/aberth.hpp"
#include "qes/assignment.hpp"

namespace qes {

namespace {

const cd kOmega{-0.5, std::sqrt(3.0) / 2.0};

cd horner3(const std::array<cd, 4>& c, cd x) { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }
cd dhorner3(const std::array<cd, 4>& c, cd x) { return (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1]; }

}  // namespace

std::array<cd, 3> solve_cubic(cd c3, cd c2, cd c1, cd c0) {
  const cd b = c2 / c3, c = c1 / c3, d = c0 / c3;
  const cd d0 = b * b - 3.0 * c;
  const cd d1 = 2.0 * b * b * b - 9.0 * b * c + 27.0 * d;
  const cd disc = std::sqrt(d1 * d1 - 4.0 * d0 * d0 * d0);
  // Pick the sign that avoids cancellation.
  cd big = std::abs(d1 + disc) >= std::abs(d1 - disc) ? (d1 + disc) / 2.0 : (d1 - disc) / 2.0;
  std::array<cd, 3> r;
  if (std::abs(big) == 0.0) {
    r.fill(-b / 3.0);
  } else {
    cd C = std::pow(big, 1.0 / 3.0);
    cd w = 1.0;
    for (auto& x : r) {
      cd Ck = w * C;
      x = -(b + Ck + d0 / Ck) / 3.0;
      w *= kOmega;
    }
  }
  const std::array<cd, 4> poly{d, c, b, 1.0};
  for (auto& x : r) {
    for (int it = 0; it < 3; ++it) {
      cd f = horner3(poly, x), df = dhorner3(poly, x);
      if (std::abs(df) == 0.0) break;
      cd step = f / df;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      x -= step;
      if (std::abs(step) <= 1e-17 * std::abs(x)) break;
    }
  }
  return r;
}

std::array<cd, 4> RecurrenceSpec::cubic(cd beta) const {
  const double s = tau * (1.0 - tau);
  return {cd(-s * s), a * s, beta, 1.0};
}

std::array<cd, 3> characteristic_roots(cd beta, cd a, double tau) {
  auto c = RecurrenceSpec{a, tau}.cubic(beta);
  auto r = solve_cubic(c[3], c[2], c[1], c[0]);
  std::sort(r.begin(), r.end(), [](cd x, cd y) { return std::abs(x) > std::abs(y); });
  return r;
}

bool support_membership(cd beta, cd a, double tau, double tol) {
  auto r = characteristic_roots(beta, a, tau);
  double m1 = std::abs(r[0]), m2 = std::abs(r[1]);
  if (m1 == 0.0) return false;
  // A vanishing pair is never the maximal one unless everything vanishes.
  if (m2 == 0.0) return false;
  return (m1 - m2) / m1 < tol;
}

std::array<cd, 3> branch_points(cd a, double tau) {
  const double s = tau * (1.0 - tau);
  return solve_cubic(4.0, a * a, -18.0 * a * s, s * (27.0 * tau * tau - 27.0 * tau - 4.0 * a * a * a));
}

cd dsc(cd a, double tau) {
  cd t = a * a * a - 27.0 * tau + 27.0 * tau * tau;
  return 16.0 * tau * (1.0 - tau) * t * t * t;
}

mpq_class dsc_exact(const mpq_class& a_cubed, const mpq_class& tau) {
  mpq_class t = a_cubed - 27 * tau + 27 * tau * tau;
  return 16 * tau * (1 - tau) * t * t * t;
}

RationalGrid branch_point_polynomial(const mpq_class& tau) {
  const mpq_class s = tau * (1 - tau);
  RationalGrid g(4, std::vector<mpq_class>(4, 0));
  g[3][0] = 4;
  g[2][2] = 1;
  g[1][1] = -18 * s;
  g[0][0] = s * (27 * tau * tau - 27 * tau);
  g[0][3] = -4 * s;
  return g;
}

RationalGrid endpoint_polynomial() {
  RationalGrid g(4, std::vector<mpq_class>(4, 0));
  g[3][0] = 4;
  g[2][2] = 1;
  g[1][1] = mpq_class(-9, 2);
  g[0][3] = -1;
  g[0][0] = mpq_class(-27, 16);
  return g;
}

bool grids_equal(const RationalGrid& x, const RationalGrid& y) {
  std::size_t rows = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t cols = std::max(i < x.size() ? x[i].size() : 0, i < y.size() ? y[i].size() : 0);
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class u = (i < x.size() && j < x[i].size()) ? x[i][j] : mpq_class(0);
      mpq_class v = (i < y.size() && j < y[i].size()) ? y[i][j] : mpq_class(0);
      if (u != v) return false;
    }
  }
  return true;
}

mpq_class branch_cubic_discriminant(const mpq_class& a, const mpq_class& tau) {
  const mpq_class s = tau * (1 - tau);
  const mpq_class A = 4, B = a * a, C = -18 * a * s, D = s * (27 * tau * tau - 27 * tau - 4 * a * a * a);
  return B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D - 27 * A * A * D * D + 18 * A * B * C * D;
}

std::array<cd, 3> support_endpoints(cd a) {
  return solve_cubic(4.0, a * a, -4.5 * a, -a * a * a - 27.0 / 16.0);
}

GaussLegendre gauss_legendre(int m) {
  GaussLegendre g;
  g.nodes.resize(static_cast<std::size_t>(m));
  g.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] to [0, 1]; x is the largest-first ordering, fill symmetrically.
    g.nodes[static_cast<std::size_t>(i)] = (1.0 - x) / 2.0;
    g.nodes[static_cast<std::size_t>(m - 1 - i)] = (1.0 + x) / 2.0;
    g.weights[static_cast<std::size_t>(i)] = w / 2.0;
    g.weights[static_cast<std::size_t>(m - 1 - i)] = w / 2.0;
  }
  return g;
}

cd continue_dominant_root(cd beta, cd a, double tau) {
  const double R = 10.0 * (1.0 + std::abs(a));
  cd dir = std::abs(beta) == 0.0 ? cd(1.0) : beta / std::abs(beta);
  cd start = std::abs(beta) >= R ? beta : R * dir;
  auto roots = characteristic_roots(start, a, tau);
  cd psi = *std::min_element(roots.begin(), roots.end(), [&](cd x, cd y) { return std::abs(x + start) < std::abs(y + start); });
  double t = 0.0, h = 1.0 / 64.0;
  const double floor_h = 1e-12;
  while (t < 1.0) {
    double tn = std::min(1.0, t + h);
    cd b = start + (beta - start) * tn;
    auto r = characteristic_roots(b, a, tau);
    std::array<double, 3> dist;
    for (int k = 0; k < 3; ++k) dist[k] = std::abs(r[k] - psi);
    int best = static_cast<int>(std::min_element(dist.begin(), dist.end()) - dist.begin());
    double second = 1e300;
    for (int k = 0; k < 3; ++k)
      if (k != best) second = std::min(second, dist[k]);
    if (second <= 10.0 * dist[best] && dist[best] > 1e-14 * (1.0 + std::abs(psi))) {
      h /= 2.0;
      if (h < floor_h) throw BranchCollision("continue_dominant_root: roots collide along the ray");
      continue;
    }
    psi = r[best];
    t = tn;
    h = std::min(h * 1.5, 1.0 / 16.0);
  }
  return psi;
}

CauchyResult cauchy_nu(cd beta, cd a, const CauchyOptions& opts) {
  auto evaluate = [&](int order, CauchyResult& res) {
    GaussLegendre g = gauss_legendre(order);
    cd acc = 0.0;
    res.ray_switches = 0;
    res.max_residual = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      double tau = g.nodes[k];
      if (support_membership(beta, a, tau, opts.membership_tol))
        throw InsideSupport("cauchy_nu: beta lies in the support for tau=" + format_double(tau, 6));
      cd psi = continue_dominant_root(beta, a, tau);
      cd dom = characteristic_roots(beta, a, tau)[0];
      if (std::abs(psi - dom) > 1e-8 * std::abs(dom)) {
        // The ray crossed this tau's equimodular set; the transform uses the dominant branch.
        ++res.ray_switches;
        psi = dom;
      }
      const double s = tau * (1.0 - tau);
      cd c = a * s;
      auto cub = RecurrenceSpec{a, tau}.cubic(beta);
      double scale = std::abs(psi) * std::abs(psi) * std::abs(psi) + std::abs(beta) * std::norm(psi) +
                     std::abs(c) * std::abs(psi) + s * s;
      res.max_residual = std::max(res.max_residual, std::abs(horner3(cub, psi)) / scale);
      // d/dbeta log Psi = -Psi / (3 Psi^2 + 2 beta Psi + c)
      acc += g.weights[k] * (-psi / (3.0 * psi * psi + 2.0 * beta * psi + c));
    }
    return acc;
  };
  CauchyResult res;
  int order = opts.order;
  cd prev = evaluate(order, res);
  while (true) {
    int next = order * 2;
    if (next > opts.max_order) {
      res.value = prev;
      res.order = order;
      return res;
    }
    CauchyResult r2;
    cd cur = evaluate(next, r2);
    if (std::abs(cur - prev) < opts.rel_tol * std::max(1.0, std::abs(cur))) {
      r2.value = cur;
      r2.order = next;
      return r2;
    }
    prev = cur;
    order = next;
    res = r2;
  }
}

std::vector<double> uniform_tau_grid(int count) {
  std::vector<double> g;
  if (count == 1) return {0.5};
  for (int k = 0; k < count; ++k) g.push_back(static_cast<double>(k) / (count - 1));
  return g;
}

std::vector<cd> SupportSample::cloud() const {
  std::vector<cd> out;
  for (const auto& l : legs) out.insert(out.end(), l.begin(), l.end());
  return out;
}

namespace {

// Pairs x, y = t x of equal modulus solve t^2 x^3 - c t x + d(1 + t) = 0; then
// beta = -(x^2 + xy + y^2 + c)/(x + y) and the third root is -beta - x - y.
struct CurvePoint {
  cd beta;
  bool dominant;
};

std::array<CurvePoint, 3> curve_points(double theta, cd c, double d, const std::array<cd, 3>* prev_x,
                                       std::array<cd, 3>& xs) {
  const cd t = std::polar(1.0, theta);
  auto x = solve_cubic(t * t, 0.0, -c * t, d * (1.0 + t));
  if (prev_x) {
    std::vector<cd> a(prev_x->begin(), prev_x->end()), b(x.begin(), x.end());
    auto perm = match_points(a, b);
    std::array<cd, 3> y;
    for (int i = 0; i < 3; ++i) y[i] = x[perm[i]];
    x = y;
  }
  xs = x;
  std::array<CurvePoint, 3> out;
  for (int i = 0; i < 3; ++i) {
    cd xi = x[i], yi = t * x[i];
    cd beta = -(xi * xi + xi * yi + yi * yi + c) / (xi + yi);
    cd z = -beta - xi - yi;
    bool finite = std::isfinite(beta.real()) && std::isfinite(beta.imag());
    out[i] = {beta, finite && std::abs(z) <= std::abs(xi) * (1.0 + 1e-12)};
  }
  return out;
}

std::vector<double> theta_samples(int count) {
  // Geometric near 0 (branch points), uniform elsewhere; pi itself maps to infinity.
  std::vector<double> th;
  const int geo = std::max(count / 5, 10);
  for (int k = 0; k < geo; ++k) th.push_back(1e-9 * std::pow(0.1 / 1e-9, static_cast<double>(k) / geo));
  const int uni = count - geo;
  for (int k = 0; k <= uni; ++k) th.push_back(0.1 + (M_PI - 0.1 - 1e-6) * k / uni);
  std::sort(th.begin(), th.end());
  th.erase(std::unique(th.begin(), th.end()), th.end());
  return th;
}

}  // namespace

SupportSample union_support(cd a, const std::vector<double>& tau_grid, int theta_samples_count,
                            const BetaGrid& beta_grid, double tol) {
  if (tau_grid.empty()) throw Error("union_support: empty tau grid");
  SupportSample out;
  out.a = a;
  out.tau_grid = tau_grid;
  const auto thetas = theta_samples(theta_samples_count);
  for (double tau : tau_grid) {
    const double s = tau * (1.0 - tau);
    if (s <= 0.0) continue;  // tau in {0, 1}: the support collapses to the origin
    for (cd b : branch_points(a, tau)) out.endpoints.push_back(b);
    const cd c = a * s;
    const double d = s * s;
    std::array<std::vector<cd>, 3> current;
    std::array<cd, 3> xs{}, prev{};
    bool have_prev = false;
    for (double th : thetas) {
      auto pts = curve_points(th, c, d, have_prev ? &prev : nullptr, xs);
      prev = xs;
      have_prev = true;
      for (int i = 0; i < 3; ++i) {
        if (pts[i].dominant) {
          current[i].push_back(pts[i].beta);
        } else if (!current[i].empty()) {
          out.legs.push_back(std::move(current[i]));
          current[i].clear();
        }
      }
    }
    for (auto& seg : current)
      if (!seg.empty()) out.legs.push_back(std::move(seg));
  }
  if (beta_grid.nx > 0 && beta_grid.ny > 0) {
    for (int i = 0; i < beta_grid.nx; ++i) {
      double re = beta_grid.re_min + (beta_grid.re_max - beta_grid.re_min) * i / std::max(1, beta_grid.nx - 1);
      for (int j = 0; j < beta_grid.ny; ++j) {
        double im = beta_grid.im_min + (beta_grid.im_max - beta_grid.im_min) * j / std::max(1, beta_grid.ny - 1);
        cd b(re, im);
        for (double tau : tau_grid)
          if (support_membership(b, a, tau, tol)) {
            out.grid_hits.push_back(b);
            break;
          }
      }
    }
  }
  return out;
}

nlohmann::json to_json(const SupportSample& s) {
  nlohmann::json j;
  j["a"] = complex_json(s.a);
  auto taus = nlohmann::json::array();
  for (double t : s.tau_grid) taus.push_back(format_double(t));
  j["tau_grid"] = taus;
  auto legs = nlohmann::json::array();
  for (const auto& l : s.legs) {
    auto pl = nlohmann::json::array();
    for (const auto& z : l) pl.push_back(complex_json(z));
    legs.push_back(pl);
  }
  j["legs"] = legs;
  auto ends = nlohmann::json::array();
  for (const auto& z : s.endpoints) ends.push_back(complex_json(z));
  j["endpoints"] = ends;
  auto hits = nlohmann::json::array();
  for (const auto& z : s.grid_hits) hits.push_back(complex_json(z));
  j["grid_hits"] = hits;
  return j;
}

PointSet recurrence_roots(double tau, cd a, int k_max) {
  if (k_max < 3) throw Error("recurrence_roots: k_max must be at least 3");
  auto provider = [&](long) {
    // D_k(beta) with ascending coefficients in beta.
    using V = std::vector<mp::Complex>;
    mp::Real s = mp::Real(tau) * (mp::Real(1.0) - mp::Real(tau));
    mp::Complex c = mp::Complex(mp::Real(a.real()), mp::Real(a.imag())) * s;
    mp::Complex minus_c = -c;
    mp::Real d = s * s;
    V d3, d2, d1{mp::Complex(1.0)};
    for (int k = 1; k <= k_max; ++k) {
      V next(d1.size() + 1, mp::Complex(0.0));
      for (std::size_t i = 0; i < d1.size(); ++i) next[i + 1] = -d1[i];
      for (std::size_t i = 0; i < d2.size(); ++i) next[i] += d2[i] * minus_c;
      for (std::size_t i = 0; i < d3.size(); ++i) next[i] += d3[i] * d;
      d3 = std::move(d2);
      d2 = std::move(d1);
      d1 = std::move(next);
    }
    return d1;
  };
  auto r = aberth_roots(provider);
  PointSet out;
  out.points = r.roots;
  out.label = "recurrence_roots";
  out.meta = {{"tau", format_double(tau)}, {"a", complex_to_string(a)}, {"k_max", k_max}};
  out.sort_lex();
  return out;
}

}  // namespace qes

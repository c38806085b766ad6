#include "qes/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "qes/aberth.hpp"

namespace qes {

cd SpectralMatrix::entry(int i, int j) const {
  if (j == i - 1) return static_cast<double>(n - i + 1);
  if (j == i + 1) return static_cast<double>(i + 1) * a;
  if (j == i + 2) return static_cast<double>((i + 1) * (i + 2));
  return 0.0;
}

Eigen::MatrixXcd SpectralMatrix::dense() const {
  const int s = size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(s - 1, i + 2); ++j) m(i, j) = entry(i, j);
  return m;
}

SpectralMatrix build_matrix(int n, cd a) {
  if (n < 1) throw Error("build_matrix: n must be positive");
  return SpectralMatrix{n, a};
}

std::vector<std::vector<mpq_class>> build_matrix_exact(int n, const mpq_class& a) {
  if (n < 1) throw Error("build_matrix_exact: n must be positive");
  const int s = n + 1;
  std::vector<std::vector<mpq_class>> m(s, std::vector<mpq_class>(s, 0));
  for (int i = 0; i < s; ++i) {
    if (i >= 1) m[i][i - 1] = n - i + 1;
    if (i + 1 < s) m[i][i + 1] = a * (i + 1);
    if (i + 2 < s) m[i][i + 2] = (i + 1) * (i + 2);
  }
  return m;
}

namespace {

// Minor recurrence coefficients, k = 1..n+1:
// D_k = -lambda D_{k-1} - c1(k) a D_{k-2} + c2(k) D_{k-3}.
long c1(int n, int k) { return static_cast<long>(k - 1) * (n - k + 2); }
long c2(int n, int k) { return static_cast<long>(n - k + 2) * (n - k + 3) * (k - 1) * (k - 2); }

}  // namespace

ExactPoly spectral_polynomial(int n, const mpq_class& a) {
  if (n < 1) throw Error("spectral_polynomial: n must be positive");
  const ExactPoly minus_lambda({mpq_class(0), mpq_class(-1)}, "lambda");
  ExactPoly d3({}, "lambda"), d2({}, "lambda"), d1({mpq_class(1)}, "lambda");
  for (int k = 1; k <= n + 1; ++k) {
    ExactPoly next = minus_lambda * d1;
    long t1 = c1(n, k), t2 = c2(n, k);
    if (t1 != 0 && a != 0) next -= d2 * mpq_class(a * t1);
    if (t2 != 0) next += d3 * mpq_class(t2);
    d3 = std::move(d2);
    d2 = std::move(d1);
    d1 = std::move(next);
  }
  d1.set_var("lambda");
  return d1;
}

BivariatePoly spectral_polynomial_symbolic(int n) {
  if (n < 1) throw Error("spectral_polynomial_symbolic: n must be positive");
  using Grid = std::vector<IntPoly>;  // index: lambda power; entry: polynomial in a
  auto shift_lambda_neg = [](const Grid& g) {
    Grid out(g.size() + 1, IntPoly({}, "a"));
    for (std::size_t i = 0; i < g.size(); ++i) out[i + 1] = -g[i];
    return out;
  };
  auto add_scaled = [](Grid& acc, const Grid& g, const IntPoly& factor) {
    if (acc.size() < g.size()) acc.resize(g.size(), IntPoly({}, "a"));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!g[i].is_zero()) acc[i] += g[i] * factor;
  };
  Grid d3, d2, d1{IntPoly({mpz_class(1)}, "a")};
  for (int k = 1; k <= n + 1; ++k) {
    Grid next = shift_lambda_neg(d1);
    long t1 = c1(n, k), t2 = c2(n, k);
    if (t1 != 0) add_scaled(next, d2, IntPoly({mpz_class(0), mpz_class(-t1)}, "a"));
    if (t2 != 0) add_scaled(next, d3, IntPoly({mpz_class(t2)}, "a"));
    d3 = std::move(d2);
    d2 = std::move(d1);
    d1 = std::move(next);
  }
  return BivariatePoly(std::move(d1));
}

std::vector<mp::Complex> spectral_coefficients_mp(int n, const mp::Complex& a) {
  using V = std::vector<mp::Complex>;
  V d3, d2, d1{mp::Complex(1.0)};
  for (int k = 1; k <= n + 1; ++k) {
    V next(d1.size() + 1, mp::Complex(0.0));
    for (std::size_t i = 0; i < d1.size(); ++i) next[i + 1] = -d1[i];
    long t1 = c1(n, k), t2 = c2(n, k);
    if (t1 != 0 && !a.is_zero()) {
      mp::Complex f = a * mp::Real(static_cast<double>(-t1));
      for (std::size_t i = 0; i < d2.size(); ++i) next[i] += d2[i] * f;
    }
    if (t2 != 0) {
      mp::Real f{mpz_class(t2)};
      for (std::size_t i = 0; i < d3.size(); ++i) next[i] += d3[i] * f;
    }
    d3 = std::move(d2);
    d2 = std::move(d1);
    d1 = std::move(next);
  }
  return d1;
}

namespace {

// Diagonal similarity by powers of two so that row and column norms match.
void balance(Eigen::MatrixXcd& m) {
  const int s = static_cast<int>(m.rows());
  const double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < s; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < s; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0, total = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * total) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

DenseSpectrum dense_eigenvalues(const Eigen::MatrixXcd& m0) {
  Eigen::MatrixXcd m = m0;
  balance(m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success) throw NonConvergence("dense_eigenvalues: QR iteration failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm_b = m.norm();
  DenseSpectrum out;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(vecs);
  Eigen::MatrixXcd inv = lu.inverse();
  const bool invertible = lu.isInvertible();
  for (int i = 0; i < vals.size(); ++i) {
    out.values.push_back(vals(i));
    double kappa = invertible ? inv.row(i).norm() * vecs.col(i).norm() : std::numeric_limits<double>::infinity();
    out.error_estimate.push_back(kappa * eps * norm_b);
    // Residual of the balanced pair; balancing is a similarity, so the spectrum is unchanged.
    double res = (m * vecs.col(i) - vals(i) * vecs.col(i)).norm() / (norm_b * vecs.col(i).norm());
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

PointSet eigenvalues(int n, cd a, const EigenOptions& opts) {
  if (n < 1) throw Error("eigenvalues: n must be positive");
  if (n > opts.cap) throw Error("eigenvalues: n=" + std::to_string(n) + " exceeds the cap " + std::to_string(opts.cap));
  PointSet out;
  out.label = "spectrum";
  out.meta = {{"n", n}, {"a", complex_to_string(a)}};
  DenseSpectrum ds = dense_eigenvalues(build_matrix(n, a).dense());
  double radius = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < ds.values.size(); ++i) {
    radius = std::max(radius, std::abs(ds.values[i]));
    worst = std::max(worst, ds.error_estimate[i]);
  }
  const double target = opts.tol * std::max(radius, 1.0);
  if (worst <= target) {
    out.points = ds.values;
    out.meta["method"] = "dense";
    out.meta["max_residual"] = format_double(ds.max_residual, 3);
  } else {
    if (!opts.allow_multiprecision)
      throw NonConvergence("eigenvalues: estimated error " + format_double(worst, 3) + " exceeds " +
                           format_double(target, 3));
    AberthOptions ao;
    ao.max_bits = opts.max_bits;
    ao.agree_tol = std::min(opts.tol, 1e-12);
    auto r = aberth_roots(
        [&](long) {
          mp::Complex am(mp::Real(a.real()), mp::Real(a.imag()));
          return spectral_coefficients_mp(n, am);
        },
        ao);
    out.points = r.roots;
    out.meta["method"] = "multiprecision";
    out.meta["bits"] = r.bits;
  }
  out.sort_lex();
  return out;
}

cd scaled_parameter(int n, cd a, ScalingRule rule) {
  if (rule == ScalingRule::constant) return a;
  return a * std::pow(static_cast<double>(n), 2.0 / 3.0);
}

PointSet scaled_spectrum(int n, cd a, ScalingRule rule, const EigenOptions& opts) {
  PointSet s = eigenvalues(n, scaled_parameter(n, a, rule), opts);
  PointSet out = s.scaled(std::pow(static_cast<double>(n), 4.0 / 3.0));
  out.label = "scaled_spectrum";
  out.meta["scaling"] = rule == ScalingRule::constant ? "a_n = a" : "a_n = a n^(2/3)";
  return out;
}

cd empirical_cauchy(const PointSet& s, cd z, double tol) {
  if (s.points.empty()) throw Error("empirical_cauchy: empty point set");
  cd acc = 0.0;
  for (const auto& x : s.points) {
    cd d = z - x;
    if (std::abs(d) <= tol) throw TooClose("empirical_cauchy: evaluation point within tolerance of a sample");
    acc += 1.0 / d;
  }
  return acc / static_cast<double>(s.points.size());
}

}  // namespace qes

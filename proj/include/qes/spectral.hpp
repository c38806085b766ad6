#pragma once

// The four-band spectral matrix M_n(a), its characteristic polynomial
// Sp_n(a, lambda) = det(M_n(a) - lambda I), and numerical spectra.

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "qes/exact_poly.hpp"
#include "qes/mp.hpp"
#include "qes/point_set.hpp"

namespace qes {

/// M_n(a), 0-indexed: M[i][i-1] = n-i+1, M[i][i+1] = (i+1) a, M[i][i+2] = (i+1)(i+2).
struct SpectralMatrix {
  int n = 1;
  cd a{0.0, 0.0};

  int size() const { return n + 1; }
  cd entry(int i, int j) const;
  Eigen::MatrixXcd dense() const;
};

SpectralMatrix build_matrix(int n, cd a);
std::vector<std::vector<mpq_class>> build_matrix_exact(int n, const mpq_class& a);

/// Sp_n(a, lambda) for rational a, by the principal-minor recurrence.
ExactPoly spectral_polynomial(int n, const mpq_class& a);
/// Sp_n as a polynomial in (lambda, a).
BivariatePoly spectral_polynomial_symbolic(int n);
/// Coefficients of Sp_n(a, .) in ascending lambda at the current working precision.
std::vector<mp::Complex> spectral_coefficients_mp(int n, const mp::Complex& a);

struct EigenOptions {
  double tol = 1e-10;       // relative accuracy asked of every eigenvalue
  int cap = 400;            // largest n accepted
  bool allow_multiprecision = true;
  long max_bits = 8192;
};

/// n+1 eigenvalues of M_n(a), sorted by (re, im). The balanced double
/// eigensolver is used when its conditioning estimate meets tol; otherwise the
/// roots of Sp_n are taken in multiprecision. meta records the route taken.
PointSet eigenvalues(int n, cd a, const EigenOptions& opts = {});

/// Double-precision route only, with per-eigenvalue error estimates.
struct DenseSpectrum {
  std::vector<cd> values;
  std::vector<double> error_estimate;  // kappa_i * eps * ||balanced M||
  double max_residual = 0.0;           // max ||(M - lambda I) v|| / ||M||
};
DenseSpectrum dense_eigenvalues(const Eigen::MatrixXcd& m);

enum class ScalingRule { constant, two_thirds };

/// a_n for the chosen rule: a itself, or a n^(2/3).
cd scaled_parameter(int n, cd a, ScalingRule rule);
/// eigenvalues(n, a_n) / n^(4/3).
PointSet scaled_spectrum(int n, cd a, ScalingRule rule, const EigenOptions& opts = {});

/// (1/|S|) sum 1/(z - xi); TooClose if z is within tol of a point.
cd empirical_cauchy(const PointSet& s, cd z, double tol = 1e-12);

}  // namespace qes

#pragma once

// Simultaneous polynomial root finding (Aberth-Ehrlich) in multiprecision,
// with automatic precision escalation.

#include <complex>
#include <functional>
#include <vector>

#include "qes/exact_poly.hpp"
#include "qes/mp.hpp"

namespace qes {

struct AberthOptions {
  long start_bits = 64;
  long max_bits = 8192;
  /// Two consecutive precisions must agree to this relative accuracy.
  double agree_tol = 1e-13;
  int max_iterations = 400;
};

struct AberthResult {
  std::vector<std::complex<double>> roots;  // sorted by (re, im)
  std::vector<mp::Complex> roots_mp;        // same order, at the final precision
  long bits = 0;                            // precision of the accepted run
  int iterations = 0;                       // total sweeps over all runs
  double max_disagreement = 0.0;            // between the last two precisions
};

/// Supplies ascending coefficients at the requested working precision.
using CoefficientProvider = std::function<std::vector<mp::Complex>(long bits)>;

/// Roots of a polynomial given by a coefficient provider. Exactly-zero
/// trailing coefficients become roots at 0. Throws NonConvergence with the
/// unresolved indices if max_bits is reached without agreement.
AberthResult aberth_roots(const CoefficientProvider& coeffs, const AberthOptions& opts = {});
AberthResult aberth_roots(const IntPoly& p, const AberthOptions& opts = {});
AberthResult aberth_roots(const ExactPoly& p, const AberthOptions& opts = {});

/// Roots of an integer polynomial, using p = x^r q(x^3) when the coefficient
/// support allows it (q is solved and cube roots taken). roots_mp is left
/// empty on that path.
AberthResult integer_poly_roots(const IntPoly& p, const AberthOptions& opts = {});

/// |p(z)| / sum |c_k||z|^k evaluated at the given precision.
double relative_residual(const IntPoly& p, std::complex<double> z, long bits = 256);

/// One run at fixed precision from given starting points; returns the number
/// of sweeps used, or -1 if some roots did not meet the stopping rule.
int aberth_iterate(const std::vector<mp::Complex>& coeffs, std::vector<mp::Complex>& z, int max_iterations,
                   std::vector<std::size_t>* stuck = nullptr);

/// Starting points on circles read off the Newton polygon of |c_k|.
std::vector<mp::Complex> newton_polygon_starts(const std::vector<mp::Complex>& coeffs);

}  // namespace qes

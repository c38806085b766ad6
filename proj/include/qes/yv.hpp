#pragma once

// Yablonskii-Vorob'ev polynomials
//   YV_0 = 1, YV_1 = t,
//   YV_{n+1} YV_{n-1} = t YV_n^2 - 4 (YV_n YV_n'' - (YV_n')^2),
// their zero loci and the rational solutions of Painleve II they generate.

#include <complex>
#include <vector>

#include "qes/aberth.hpp"
#include "qes/exact_poly.hpp"
#include "qes/point_set.hpp"

namespace qes {

struct YVSequence {
  std::vector<IntPoly> polys;  // YV_0 .. YV_N in t
};

/// Exact generation; throws NotDivisible if a division step leaves a remainder.
YVSequence yv_generate(int N);

/// True if every nonzero coefficient sits in a degree congruent to deg p mod 3.
bool coefficient_support_mod3(const IntPoly& p);

struct YVZeroOptions {
  int cap = 60;
  AberthOptions aberth;
};

/// All n(n+1)/2 zeros of YV_n. meta records the residual
/// max |YV_n(z)| / sum |c_k||z|^k and the precision used.
PointSet yv_zeros(int n, const YVZeroOptions& opts = {});
PointSet yv_zeros(const IntPoly& p, const YVZeroOptions& opts = {});

/// (9/2)^(2/3) n^(2/3)
double yv_scale(int n);
/// Zeros divided by yv_scale(n).
PointSet scaled_zeros(int n, const YVZeroOptions& opts = {});

/// u(t; n) = d/dt ln(YV_{n-1}/YV_n) at each sample. Throws PoleTooClose when a
/// sample is within min_distance of a zero, judged by |p/p'|.
std::vector<cd> painleve_rational(int n, const std::vector<cd>& t_samples, double min_distance = 1e-3);

/// |u'' - t u - 2u^3 - n| with u'' from central differences (step h, one
/// Richardson step).
double painleve_residual(int n, cd t, double h = 1e-4);

}  // namespace qes

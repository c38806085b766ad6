#pragma once

// Asymptotics of the constant-coefficient recurrence
//   D_k = -beta D_{k-1} - a tau(1-tau) D_{k-2} + tau^2 (1-tau)^2 D_{k-3}
// obtained from the spectral minors in the limit k/n -> tau. Its
// characteristic cubic is
//   Psi^3 + beta Psi^2 + a tau(1-tau) Psi - tau^2 (1-tau)^2 = 0.

#include <array>
#include <complex>
#include <vector>

#include <json.hpp>

#include "qes/exact_poly.hpp"
#include "qes/point_set.hpp"

namespace qes {

/// Roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0), Newton-polished, in no particular order.
std::array<cd, 3> solve_cubic(cd c3, cd c2, cd c1, cd c0);

struct RecurrenceSpec {
  cd a;
  double tau;
  /// Ascending coefficients of the cubic in Psi at this beta.
  std::array<cd, 4> cubic(cd beta) const;
};

/// The three roots in Psi, sorted by decreasing modulus.
std::array<cd, 3> characteristic_roots(cd beta, cd a, double tau);

/// Two largest-modulus roots equal in modulus to relative tol.
bool support_membership(cd beta, cd a, double tau, double tol = 1e-4);

/// Roots in beta of 4b^3 + a^2 b^2 - 18 a b s + s(27 tau^2 - 27 tau - 4a^3), s = tau(1-tau).
std::array<cd, 3> branch_points(cd a, double tau);

/// 16 tau(1-tau)(a^3 - 27 tau + 27 tau^2)^3.
cd dsc(cd a, double tau);
/// Same in exact arithmetic; only a^3 enters.
mpq_class dsc_exact(const mpq_class& a_cubed, const mpq_class& tau);

/// Coefficient grids c[i][j] of beta^i a^j (rational).
using RationalGrid = std::vector<std::vector<mpq_class>>;
/// The branch-point cubic at a rational tau, as a polynomial in (beta, a).
RationalGrid branch_point_polynomial(const mpq_class& tau);
/// 4L^3 + a^2 L^2 - 9aL/2 - a^3 - 27/16, the critical-value cubic in (L, a).
RationalGrid endpoint_polynomial();
bool grids_equal(const RationalGrid& x, const RationalGrid& y);

/// Discriminant in beta of the branch-point cubic at rational (a, tau), by the
/// classical cubic discriminant formula.
mpq_class branch_cubic_discriminant(const mpq_class& a, const mpq_class& tau);

/// Roots of the critical-value cubic: candidate endpoints of the limiting support.
std::array<cd, 3> support_endpoints(cd a);

struct GaussLegendre {
  std::vector<double> nodes;    // in (0, 1)
  std::vector<double> weights;  // sum to 1
};
GaussLegendre gauss_legendre(int m);

struct CauchyOptions {
  int order = 64;
  double rel_tol = 1e-10;
  int max_order = 4096;
  double membership_tol = 1e-4;
};

struct CauchyResult {
  cd value;
  int order = 0;           // nodes used by the accepted rule
  int ray_switches = 0;    // nodes where ray continuation did not end on the dominant root
  double max_residual = 0; // max |cubic(Psi)| / scale over the nodes
};

/// Continues the root with Psi ~ -beta from |beta| = 10(1+|a|) down the ray to beta.
cd continue_dominant_root(cd beta, cd a, double tau);

/// Cauchy transform of the tau-averaged limit measure:
///   C(beta) = int_0^1 Psi'(beta)/Psi(beta) dtau, Psi the dominant root.
CauchyResult cauchy_nu(cd beta, cd a, const CauchyOptions& opts = {});

struct SupportSample {
  cd a;
  std::vector<double> tau_grid;
  std::vector<std::vector<cd>> legs;      // polylines of the equimodular set, per tau and branch
  std::vector<cd> endpoints;              // branch points for each tau
  std::vector<cd> grid_hits;              // raster points passing support_membership
  std::vector<cd> cloud() const;          // all polyline vertices
};

struct BetaGrid {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  int nx = 0, ny = 0;  // 0 disables the raster pass
};

/// Equimodular curves traced by the angle parametrisation Psi_2 = Psi_1 e^{i theta},
/// restricted to where that pair dominates; optional raster membership on beta_grid.
SupportSample union_support(cd a, const std::vector<double>& tau_grid, int theta_samples = 2000,
                            const BetaGrid& beta_grid = {}, double tol = 1e-4);
std::vector<double> uniform_tau_grid(int count);  // count points on [0, 1], endpoints included
nlohmann::json to_json(const SupportSample& s);

/// Roots in beta of D_{k_max} for the fixed-tau recurrence.
PointSet recurrence_roots(double tau, cd a, int k_max);

}  // namespace qes

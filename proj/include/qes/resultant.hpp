#pragma once

// Resultants and discriminants over the integers.
//
// Convention: res(p, q) is the determinant of the Sylvester matrix whose first
// deg q rows carry the coefficients of p (highest degree first). The
// discriminant of p is res(p, p') with no leading-coefficient normalisation.

#include <optional>
#include <vector>

#include "qes/exact_poly.hpp"

namespace qes {

enum class Variable { lambda, a };

/// Sylvester matrix for the given formal degrees (>= actual degrees).
std::vector<std::vector<mpz_class>> sylvester_matrix(const IntPoly& p, const IntPoly& q, int deg_p, int deg_q);

/// Fraction-free (Bareiss) determinant with row pivoting.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m);

/// Resultant of univariate integer polynomials by the subresultant PRS.
mpz_class resultant(const IntPoly& p, const IntPoly& q);

/// Same value through the Sylvester determinant; an independent oracle.
mpz_class resultant_sylvester(const IntPoly& p, const IntPoly& q);

/// Bivariate resultant eliminating one variable; the result is a polynomial in
/// the other. degree_bound, when given, must bound the result's degree; the
/// generic Bezout-type bound is used otherwise. One extra evaluation point is
/// always checked, so an undersized bound throws instead of returning garbage.
IntPoly resultant(const BivariatePoly& p, const BivariatePoly& q, Variable eliminate,
                  std::optional<int> degree_bound = std::nullopt, int jobs = 1);

/// res_lambda(p, dp/dlambda) as a polynomial in a.
IntPoly discriminant_lambda(const BivariatePoly& p, std::optional<int> degree_bound = std::nullopt, int jobs = 1);

/// Recovers the integer polynomial of degree <= d from its values at s, s+1, ..., s+d.
IntPoly interpolate_consecutive(const std::vector<mpz_class>& values, const mpz_class& s);

}  // namespace qes

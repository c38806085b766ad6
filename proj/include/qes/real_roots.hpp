#pragma once

// Exact real-root counting and isolation with Sturm sequences.

#include <optional>
#include <vector>

#include "qes/exact_poly.hpp"

namespace qes {

/// A closed interval with rational endpoints; an unset endpoint means infinite.
struct RationalRange {
  std::optional<mpq_class> lo;
  std::optional<mpq_class> hi;

  static RationalRange whole_line() { return {}; }
  static RationalRange negative_axis() { return {std::nullopt, mpq_class(0)}; }
};

struct IsolatingInterval {
  mpq_class lo;
  mpq_class hi;  // lo == hi for an exact rational root
};

struct RealRootReport {
  std::size_t count = 0;
  std::vector<IsolatingInterval> intervals;  // sorted, pairwise disjoint
};

/// Sturm sequence with positive rescalings: sign patterns match the classical one.
std::vector<IntPoly> sturm_sequence(const IntPoly& p);

/// Sign of p at a rational point without leaving the integers.
int sign_at(const IntPoly& p, const mpq_class& x);

/// Fujiwara-type bound (a power of two): every complex root has modulus strictly below it.
mpq_class root_bound(const IntPoly& p);

/// Counts and isolates the real roots of p inside range (endpoints included).
/// Throws NotSquarefree when gcd(p, p') is non-constant.
RealRootReport real_roots(const ExactPoly& p, const RationalRange& range = RationalRange::whole_line());

/// Shrinks an isolating interval of p until its width is at most width.
IsolatingInterval refine(const IntPoly& p, IsolatingInterval iv, const mpq_class& width);

}  // namespace qes

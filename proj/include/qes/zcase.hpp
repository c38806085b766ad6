#pragma once

// Structure of Sp_n(0, lambda): the cube-root splitting into P/Q/R sequences
// in xi = lambda^3, and exact certification of their real-rootedness and
// interlacing.
//
// P, Q, R use the "+lambda" sign convention: with D_k the k-th leading
// principal minor of M_n(0) + lambda I,
//   D_{3l} = P_l(xi),  D_{3l+1} = lambda Q_l(xi),  D_{3l+2} = lambda^2 R_l(xi).
// Since det(M + lambda I) = Sp_n(0, -lambda), conversions flip lambda's sign.

#include <json.hpp>

#include <string>
#include <vector>

#include "qes/exact_poly.hpp"

namespace qes {

struct PQRTriple {
  int n = 0;
  int l = 0;
  ExactPoly P, Q, R;  // monic of degree l in xi
  // Whether the polynomial is an actual minor of the (n+1)x(n+1) matrix.
  bool p_is_minor = true, q_is_minor = true, r_is_minor = true;
};

/// l = 0 .. floor((n+1)/3), enough to reach the full determinant.
std::vector<PQRTriple> pqr_sequences(int n);

struct FactorStructure {
  int r = 0;    // Sp_n(0, lambda) = lambda^r q(lambda^3)
  ExactPoly q;  // in xi
};

/// Throws StructureViolation if a coefficient off the lambda^(3j+r) lattice is nonzero.
FactorStructure factor_structure(int n);

enum class Interlacing { interlacing_largest_in_p, not_interlacing };
std::string to_string(Interlacing v);

/// Exact interlacing verdict for deg p = deg q + 1 or deg p = deg q. Throws
/// MultipleRoot if either polynomial has a repeated root.
Interlacing certify_interlacing(const ExactPoly& p, const ExactPoly& q);

/// True iff every root of p is real, negative and simple (exact).
bool certify_negative_simple(const ExactPoly& p);

struct CertificationEntry {
  int l = 0;
  std::string check;  // e.g. "P negative simple", "xiR(l-1) <- P(l)"
  bool ok = false;
};

struct CertificationReport {
  int n = 0;
  bool structure_ok = false;  // lambda^r q(lambda^3) reproduces Sp_n(0, .)
  std::vector<CertificationEntry> entries;
  double seconds = 0.0;
  bool all_ok() const;
};

/// Certifies the a=0 structure for one n: factorisation, negativity/simplicity of
/// every P/Q/R that is a genuine minor, positivity of coefficients, and the
/// three interlacing chains.
CertificationReport certify(int n);
nlohmann::json to_json(const CertificationReport& r, bool with_timing = false);

}  // namespace qes

#pragma once

// Dense univariate polynomials with exact GMP coefficients.
//
// ExactPoly (big rationals) is the general type; IntPoly (big integers) is used
// where the coefficients are known to be integral (spectral polynomials,
// Yablonskii-Vorob'ev polynomials, discriminants). Coefficients are stored in
// ascending degree and the leading coefficient is never zero unless the
// polynomial itself is zero.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qes/errors.hpp"

namespace qes {

inline constexpr std::size_t kMaxCoefficients = 100000;

// Operand size (in coefficients) above which multiplication switches to Karatsuba.
inline constexpr std::size_t kKaratsubaThreshold = 24;

template <class T>
class DensePoly {
 public:
  using value_type = T;

  DensePoly() = default;
  explicit DensePoly(std::vector<T> coeffs, std::string var = "x")
      : c_(std::move(coeffs)), var_(std::move(var)) {
    check_cap(c_.size());
    trim();
  }
  DensePoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static DensePoly constant(const T& c, std::string var = "x") { return DensePoly({c}, std::move(var)); }
  static DensePoly monomial(const T& c, std::size_t k, std::string var = "x") {
    check_cap(k + 1);
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return DensePoly(std::move(v), std::move(var));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  const std::string& var() const { return var_; }
  void set_var(std::string v) { var_ = std::move(v); }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  DensePoly derivative() const {
    if (c_.size() <= 1) return DensePoly({}, var_);
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return DensePoly(std::move(d), var_);
  }

  T eval(const T& x) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  DensePoly& operator+=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  DensePoly& operator-=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  DensePoly& operator*=(const T& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator-(DensePoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend DensePoly operator*(DensePoly a, const T& s) { return a *= s; }
  friend DensePoly operator*(const T& s, DensePoly a) { return a *= s; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly({}, a.var_);
    check_cap(a.c_.size() + b.c_.size() - 1);
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    multiply_into(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), out.data());
    return DensePoly(std::move(out), a.var_);
  }
  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

  /// p(x) -> p(x^k)
  DensePoly inflate(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<T> v((c_.size() - 1) * k + 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return DensePoly(std::move(v), var_);
  }

  /// Schoolbook for small operands, Karatsuba above kKaratsubaThreshold.
  /// out must hold na + nb - 1 zero-initialised entries; products are accumulated.
  static void multiply_into(const T* a, std::size_t na, const T* b, std::size_t nb, T* out);

  static void check_cap(std::size_t n) {
    if (n > kMaxCoefficients)
      throw DegreeCapExceeded("polynomial would need " + std::to_string(n) + " coefficients (cap " +
                              std::to_string(kMaxCoefficients) + ")");
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
  std::string var_ = "x";
};

using ExactPoly = DensePoly<mpq_class>;
using IntPoly = DensePoly<mpz_class>;

template <class T>
void DensePoly<T>::multiply_into(const T* a, std::size_t na, const T* b, std::size_t nb, T* out) {
  if (na < kKaratsubaThreshold || nb < kKaratsubaThreshold) {
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
    }
    return;
  }
  if (na != nb) {
    // Split the longer operand into chunks the size of the shorter one.
    if (na < nb) {
      std::swap(a, b);
      std::swap(na, nb);
    }
    for (std::size_t off = 0; off < na; off += nb) {
      std::size_t len = std::min(nb, na - off);
      multiply_into(a + off, len, b, nb, out + off);
    }
    return;
  }
  // Karatsuba on equal lengths: a = a0 + x^h a1, b = b0 + x^h b1.
  const std::size_t n = na;
  const std::size_t h = n / 2;
  const std::size_t n1 = n - h;
  std::vector<T> z0(2 * h - 1, T(0)), z2(2 * n1 - 1, T(0)), z1(2 * n1 - 1, T(0));
  multiply_into(a, h, b, h, z0.data());
  multiply_into(a + h, n1, b + h, n1, z2.data());
  std::vector<T> sa(n1), sb(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    sa[i] = a[h + i];
    sb[i] = b[h + i];
    if (i < h) {
      sa[i] += a[i];
      sb[i] += b[i];
    }
  }
  multiply_into(sa.data(), n1, sb.data(), n1, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
}

/// p / q with zero remainder required; throws NotDivisible otherwise.
ExactPoly exact_div(const ExactPoly& p, const ExactPoly& q);
IntPoly exact_div(const IntPoly& p, const IntPoly& q);

/// Quotient and remainder over the rationals.
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& p, const ExactPoly& q);

/// Pseudo-remainder lc(q)^(deg p - deg q + 1) * p mod q over the integers.
IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q);

mpz_class content(const IntPoly& p);        // non-negative gcd of the coefficients
IntPoly primitive_part(const IntPoly& p);   // p / content(p), sign preserved
IntPoly divide_coefficients(const IntPoly& p, const mpz_class& d);  // exact coefficientwise

ExactPoly to_exact(const IntPoly& p);
/// Clears denominators: returns (d * p) as an integer polynomial with d > 0 minimal.
IntPoly clear_denominators(const ExactPoly& p);

/// Monic gcd over Q (zero if both inputs are zero).
ExactPoly gcd(const ExactPoly& p, const ExactPoly& q);
ExactPoly make_monic(const ExactPoly& p);

/// p(x) -> p(x + s)
IntPoly taylor_shift(const IntPoly& p, const mpz_class& s);

std::string to_string(const ExactPoly& p);
std::string to_string(const IntPoly& p);

std::vector<std::string> coefficient_strings(const ExactPoly& p);
std::vector<std::string> coefficient_strings(const IntPoly& p);
IntPoly int_poly_from_strings(const std::vector<std::string>& coeffs, std::string var = "x");
ExactPoly exact_poly_from_strings(const std::vector<std::string>& coeffs, std::string var = "x");

/// Bivariate integer polynomial in (lambda, a): coeff(i, j) multiplies lambda^i a^j.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  BivariatePoly(std::vector<IntPoly> by_lambda) : rows_(std::move(by_lambda)) { trim(); }

  int degree_lambda() const { return static_cast<int>(rows_.size()) - 1; }
  int degree_a() const;
  int total_degree() const;
  bool is_zero() const { return rows_.empty(); }

  mpz_class coeff(std::size_t i, std::size_t j) const {
    return i < rows_.size() ? rows_[i].coeff(j) : mpz_class(0);
  }
  /// Coefficient of lambda^i as a polynomial in a.
  const IntPoly& lambda_coeff(std::size_t i) const { return rows_.at(i); }
  const std::vector<IntPoly>& rows() const { return rows_; }

  IntPoly at_a(const mpz_class& a) const;       // polynomial in lambda
  ExactPoly at_a(const mpq_class& a) const;     // polynomial in lambda
  BivariatePoly derivative_lambda() const;
  /// Swap the roles of the two variables.
  BivariatePoly transposed() const;

  friend bool operator==(const BivariatePoly& x, const BivariatePoly& y) { return x.rows_ == y.rows_; }

 private:
  void trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
  }
  std::vector<IntPoly> rows_;
};

}  // namespace qes

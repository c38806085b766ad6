#pragma once

// Thin RAII layer over MPFR: a variable-precision real and a complex pair.
// New values take the calling thread's working precision (see PrecisionScope).

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>

namespace qes::mp {

long working_precision();

class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real();
  Real(double x);  // NOLINT: implicit on purpose, mirrors double arithmetic
  explicit Real(const mpz_class& z);
  explicit Real(const mpq_class& q);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2 of the magnitude; -inf for zero. Safe outside the double range.
  double log2_abs() const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  friend Real operator/(const Real& x, const Real& y);
  friend Real operator-(const Real& x);
  friend bool operator<(const Real& x, const Real& y) { return mpfr_less_p(x.v_, y.v_) != 0; }
  friend bool operator>(const Real& x, const Real& y) { return mpfr_greater_p(x.v_, y.v_) != 0; }
  friend bool operator<=(const Real& x, const Real& y) { return mpfr_lessequal_p(x.v_, y.v_) != 0; }

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real pow2(long e);  // 2^e

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r), im(0.0) {}  // NOLINT
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  double log2_abs() const;

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(const Complex& x, const Complex& y);
Complex operator-(const Complex& x, const Complex& y);
Complex operator*(const Complex& x, const Complex& y);
Complex operator*(const Complex& x, const Real& y);
Complex operator/(const Complex& x, const Complex& y);
Complex operator-(const Complex& x);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Complex conj(const Complex& z);
Complex reciprocal(const Complex& z);

/// z <- z * w + c, the Horner step, reusing scratch storage.
void fma_into(Complex& z, const Complex& w, const Complex& c, Real& t1, Real& t2);

}  // namespace qes::mp

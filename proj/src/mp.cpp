#include "qes/mp.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace qes::mp {

namespace {
thread_local long g_precision = 128;
}

long working_precision() { return g_precision; }

PrecisionScope::PrecisionScope(long bits) : saved_(g_precision) {
  g_precision = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
}

PrecisionScope::~PrecisionScope() { g_precision = saved_; }

Real::Real() {
  mpfr_init2(v_, g_precision);
  mpfr_set_zero(v_, 1);
}

Real::Real(double x) {
  mpfr_init2(v_, g_precision);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(const mpz_class& z) {
  mpfr_init2(v_, g_precision);
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& q) {
  mpfr_init2(v_, g_precision);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

double Real::log2_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& x, const Real& y) {
  Real r;
  mpfr_add(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& x, const Real& y) {
  Real r;
  mpfr_sub(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& x, const Real& y) {
  Real r;
  mpfr_mul(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& x, const Real& y) {
  Real r;
  mpfr_div(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& x) {
  Real r;
  mpfr_neg(r.v_, x.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r;
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r;
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow2(long e) {
  Real r(1.0);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

double Complex::log2_abs() const {
  double a = re.log2_abs();
  double b = im.log2_abs();
  if (std::isinf(a)) return b;
  if (std::isinf(b)) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
Complex operator*(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
Complex operator*(const Complex& x, const Real& y) { return {x.re * y, x.im * y}; }
Complex operator-(const Complex& x) { return {-x.re, -x.im}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex reciprocal(const Complex& z) {
  Real d = norm(z);
  return {z.re / d, -z.im / d};
}

Complex operator/(const Complex& x, const Complex& y) {
  Real d = norm(y);
  Real re = x.re * y.re + x.im * y.im;
  Real im = x.im * y.re - x.re * y.im;
  re /= d;
  im /= d;
  return {std::move(re), std::move(im)};
}

void fma_into(Complex& z, const Complex& w, const Complex& c, Real& t1, Real& t2) {
  // (zr + i zi)(wr + i wi) + c
  mpfr_mul(t1.get(), z.re.get(), w.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), z.im.get(), w.im.get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), z.re.get(), w.im.get(), MPFR_RNDN);
  mpfr_fma(z.im.get(), z.im.get(), w.re.get(), t2.get(), MPFR_RNDN);
  mpfr_add(z.re.get(), t1.get(), c.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), z.im.get(), c.im.get(), MPFR_RNDN);
}

}  // namespace qes::mp

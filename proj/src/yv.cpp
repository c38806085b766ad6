#include "qes/yv.hpp"

#include <algorithm>
#include <cmath>

#include "qes/mp.hpp"

namespace qes {

YVSequence yv_generate(int N) {
  if (N < 0) throw Error("yv_generate: N must be non-negative");
  YVSequence s;
  s.polys.push_back(IntPoly({mpz_class(1)}, "t"));
  if (N == 0) return s;
  s.polys.push_back(IntPoly({mpz_class(0), mpz_class(1)}, "t"));
  const IntPoly t({mpz_class(0), mpz_class(1)}, "t");
  for (int n = 1; n < N; ++n) {
    const IntPoly& y = s.polys[static_cast<std::size_t>(n)];
    IntPoly d1 = y.derivative();
    IntPoly d2 = d1.derivative();
    IntPoly num = t * (y * y) - (y * d2 - d1 * d1) * mpz_class(4);
    IntPoly next = exact_div(num, s.polys[static_cast<std::size_t>(n - 1)]);
    next.set_var("t");
    s.polys.push_back(std::move(next));
  }
  return s;
}

bool coefficient_support_mod3(const IntPoly& p) {
  if (p.is_zero()) return true;
  const int r = p.degree() % 3;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.coeffs()[k] != 0 && static_cast<int>(k % 3) != r) return false;
  return true;
}

PointSet yv_zeros(const IntPoly& p, const YVZeroOptions& opts) {
  AberthResult res = integer_poly_roots(p, opts.aberth);
  const long bits = res.bits;
  PointSet out;
  out.points = std::move(res.roots);
  out.sort_lex();
  double worst = 0.0;
  for (const cd& z : out.points) worst = std::max(worst, relative_residual(p, z, std::max(bits, 128L)));
  out.meta["residual"] = format_double(worst, 6);
  out.meta["bits"] = bits;
  return out;
}

PointSet yv_zeros(int n, const YVZeroOptions& opts) {
  if (n < 0) throw Error("yv_zeros: n must be non-negative");
  if (n > opts.cap) throw DegreeCapExceeded("yv_zeros: n = " + std::to_string(n) + " exceeds cap " + std::to_string(opts.cap));
  YVSequence s = yv_generate(n);
  PointSet out = yv_zeros(s.polys.back(), opts);
  out.label = "Z_" + std::to_string(n);
  out.meta["n"] = n;
  return out;
}

double yv_scale(int n) { return std::pow(4.5, 2.0 / 3.0) * std::pow(static_cast<double>(n), 2.0 / 3.0); }

PointSet scaled_zeros(int n, const YVZeroOptions& opts) {
  PointSet z = yv_zeros(n, opts);
  PointSet s = z.scaled(yv_scale(n));
  s.label = "scaled Z_" + std::to_string(n);
  return s;
}

namespace {

// p'(t)/p(t) in multiprecision, with the Newton distance |p/p'|.
struct LogDerivative {
  mp::Complex value;
  double newton_distance;
};

LogDerivative log_derivative(const IntPoly& p, const mp::Complex& t) {
  mp::Complex v(0.0), d(0.0);
  for (std::size_t k = p.size(); k-- > 0;) {
    d = d * t + v;
    v = v * t + mp::Complex(mp::Real(p.coeffs()[k]), mp::Real(0.0));
  }
  if (v.re.is_zero() && v.im.is_zero()) return {mp::Complex(0.0), 0.0};
  mp::Complex q = d / v;
  double dist = (d.re.is_zero() && d.im.is_zero()) ? 1e300 : (mp::abs(v) / mp::abs(d)).to_double();
  return {q, dist};
}

constexpr long kPainleveBits = 256;

mp::Complex u_value(const IntPoly& prev, const IntPoly& cur, const mp::Complex& t, double min_distance) {
  LogDerivative a = log_derivative(prev, t);
  LogDerivative b = log_derivative(cur, t);
  if (a.newton_distance < min_distance || b.newton_distance < min_distance)
    throw PoleTooClose("painleve_rational: sample is too close to a zero of YV");
  return a.value - b.value;
}

cd to_cd(const mp::Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

}  // namespace

std::vector<cd> painleve_rational(int n, const std::vector<cd>& t_samples, double min_distance) {
  if (n < 0) throw Error("painleve_rational: n must be non-negative");
  std::vector<cd> out;
  if (n == 0) return std::vector<cd>(t_samples.size(), cd(0.0, 0.0));
  YVSequence s = yv_generate(n);
  mp::PrecisionScope scope(kPainleveBits);
  for (const cd& t : t_samples)
    out.push_back(to_cd(u_value(s.polys[static_cast<std::size_t>(n - 1)], s.polys.back(), mp::Complex(t), min_distance)));
  return out;
}

double painleve_residual(int n, cd t, double h) {
  if (n < 1) {
    // u = 0 solves u'' = tu + 2u^3 + 0.
    return 0.0;
  }
  YVSequence s = yv_generate(n);
  const IntPoly& prev = s.polys[static_cast<std::size_t>(n - 1)];
  const IntPoly& cur = s.polys.back();
  mp::PrecisionScope scope(kPainleveBits);
  auto u = [&](cd x) { return u_value(prev, cur, mp::Complex(x), 1e-3 * h); };
  auto second = [&](double step) {
    mp::Complex up = u(t + step), mid = u(t), dn = u(t - step);
    mp::Complex num = up - mid * mp::Real(2.0) + dn;
    return to_cd(num) / (step * step);
  };
  const cd d2 = (4.0 * second(h / 2) - second(h)) / 3.0;
  const cd u0 = to_cd(u(t));
  return std::abs(d2 - t * u0 - 2.0 * u0 * u0 * u0 - static_cast<double>(n));
}

}  // namespace qes

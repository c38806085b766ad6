#include "qes/aberth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qes {

namespace {

mp::Real rebase(const mp::Real& x) {
  mp::Real r;
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

mp::Complex rebase(const mp::Complex& z) { return {rebase(z.re), rebase(z.im)}; }

}  // namespace

std::vector<mp::Complex> newton_polygon_starts(const std::vector<mp::Complex>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<double> lg(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) lg[k] = c[k].log2_abs();
  // Upper convex hull of (k, log2|c_k|) over the nonzero coefficients.
  std::vector<int> hull;
  for (int k = 0; k <= d; ++k) {
    if (std::isinf(lg[k])) continue;
    while (hull.size() >= 2) {
      int i = hull[hull.size() - 2], j = hull.back();
      double cross = (lg[j] - lg[i]) * (k - i) - (lg[k] - lg[i]) * (j - i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<mp::Complex> z;
  z.reserve(static_cast<std::size_t>(d));
  const double sigma = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    int i = hull[h], j = hull[h + 1];
    int m = j - i;
    double log_r = (lg[i] - lg[j]) / m;
    for (int k = 0; k < m; ++k) {
      double ang = 2.0 * M_PI * k / m + 2.0 * M_PI * i / d + sigma;
      mp::Real r = mp::pow2(static_cast<long>(std::floor(log_r)));
      r *= mp::Real(std::exp2(log_r - std::floor(log_r)));
      z.push_back({r * mp::Real(std::cos(ang)), r * mp::Real(std::sin(ang))});
    }
  }
  return z;
}

int aberth_iterate(const std::vector<mp::Complex>& c, std::vector<mp::Complex>& z, int max_iterations,
                   std::vector<std::size_t>* stuck) {
  const std::size_t d = c.size() - 1;
  const long bits = mp::working_precision();
  std::vector<mp::Real> cabs(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) cabs[k] = mp::abs(c[k]);
  std::vector<char> done(d, 0);
  mp::Real t1, t2;
  const mp::Real eps = mp::pow2(-bits);
  const mp::Real bound_factor = mp::Real(4.0 * static_cast<double>(d + 1)) * eps;
  int sweep = 0;
  for (; sweep < max_iterations; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      all_done = false;
      // p and p' by Horner, plus the rounding-error bound sum |c_k| |z|^k.
      mp::Complex p = c[d], dp(0.0);
      mp::Real az = mp::abs(z[i]);
      mp::Real bound = cabs[d];
      for (std::size_t k = d; k-- > 0;) {
        mp::fma_into(dp, z[i], p, t1, t2);
        mp::fma_into(p, z[i], c[k], t1, t2);
        bound = bound * az + cabs[k];
      }
      if (mp::abs(p) <= bound * bound_factor) {
        done[i] = 1;
        continue;
      }
      if (dp.is_zero()) {
        // Nudge off a critical point.
        z[i] = z[i] + mp::Complex(mp::Real(1e-3) * (az + mp::Real(1.0)), mp::Real(1e-3));
        continue;
      }
      mp::Complex ratio = p / dp;
      mp::Complex s(0.0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        s += mp::reciprocal(z[i] - z[j]);
      }
      mp::Complex w = ratio / (mp::Complex(1.0) - ratio * s);
      z[i] -= w;
      if (mp::abs(w) <= eps * mp::abs(z[i])) done[i] = 1;
    }
    if (all_done) break;
  }
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < d; ++i)
    if (!done[i]) open.push_back(i);
  if (stuck) *stuck = open;
  return open.empty() ? sweep : -1;
}

AberthResult aberth_roots(const CoefficientProvider& provider, const AberthOptions& opts) {
  AberthResult res;
  std::vector<mp::Complex> prev;
  std::vector<std::size_t> stuck;
  std::size_t zeros = 0;
  bool have_prev = false;
  for (long bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
    mp::PrecisionScope scope(bits);
    std::vector<mp::Complex> c = provider(bits);
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw Error("aberth_roots: zero polynomial");
    zeros = 0;
    while (zeros < c.size() && c[zeros].is_zero()) ++zeros;
    c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
    std::vector<mp::Complex> z;
    if (c.size() > 1) {
      if (have_prev) {
        for (const auto& x : prev) z.push_back(rebase(x));
      } else {
        z = newton_polygon_starts(c);
      }
      int it = aberth_iterate(c, z, opts.max_iterations, &stuck);
      res.iterations += it < 0 ? opts.max_iterations : it;
      if (have_prev && it >= 0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
          mp::Real diff = mp::abs(z[i] - rebase(prev[i]));
          mp::Real scale = mp::abs(z[i]);
          double rel = (diff / (scale < mp::Real(1.0) ? mp::Real(1.0) : scale)).to_double();
          worst = std::max(worst, rel);
        }
        res.max_disagreement = worst;
        if (worst <= opts.agree_tol) {
          prev = std::move(z);
          res.bits = bits;
          break;
        }
      }
      // Unconverged runs still seed the next precision.
      prev = std::move(z);
      have_prev = true;
    } else {
      prev.clear();
      res.bits = bits;
      break;
    }
    if (bits * 2 > opts.max_bits) {
      throw NonConvergence("aberth_roots: no agreement up to " + std::to_string(opts.max_bits) + " bits", stuck);
    }
  }
  mp::PrecisionScope scope(res.bits);
  std::vector<mp::Complex> all;
  for (std::size_t k = 0; k < zeros; ++k) all.emplace_back(0.0);
  for (auto& x : prev) all.push_back(std::move(x));
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::complex<double>> dz(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) dz[i] = all[i].to_complex();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dz[a].real() != dz[b].real()) return dz[a].real() < dz[b].real();
    return dz[a].imag() < dz[b].imag();
  });
  for (std::size_t i : order) {
    res.roots.push_back(dz[i]);
    res.roots_mp.push_back(all[i]);
  }
  return res;
}

AberthResult aberth_roots(const IntPoly& p, const AberthOptions& opts) {
  return aberth_roots(
      [&p](long) {
        std::vector<mp::Complex> c;
        c.reserve(p.size());
        for (const auto& x : p.coeffs()) c.emplace_back(mp::Real(x), mp::Real(0.0));
        return c;
      },
      opts);
}

AberthResult aberth_roots(const ExactPoly& p, const AberthOptions& opts) {
  return aberth_roots(
      [&p](long) {
        std::vector<mp::Complex> c;
        c.reserve(p.size());
        for (const auto& x : p.coeffs()) c.emplace_back(mp::Real(x), mp::Real(0.0));
        return c;
      },
      opts);
}

AberthResult integer_poly_roots(const IntPoly& p, const AberthOptions& opts) {
  if (p.degree() < 3) return aberth_roots(p, opts);
  const int r = p.degree() % 3;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.coeffs()[k] != 0 && static_cast<int>(k % 3) != r) return aberth_roots(p, opts);
  std::vector<mpz_class> qc;
  for (std::size_t k = static_cast<std::size_t>(r); k < p.size(); k += 3) qc.push_back(p.coeffs()[k]);
  AberthResult q = aberth_roots(IntPoly(std::move(qc), "s"), opts);
  AberthResult out;
  out.bits = q.bits;
  out.iterations = q.iterations;
  out.max_disagreement = q.max_disagreement;
  for (int i = 0; i < r; ++i) out.roots.emplace_back(0.0, 0.0);
  for (const auto& s : q.roots) {
    const double m = std::cbrt(std::abs(s));
    const double th = std::arg(s);
    for (int k = 0; k < 3; ++k) out.roots.push_back(m == 0.0 ? std::complex<double>(0.0, 0.0) : std::polar(m, (th + 2.0 * M_PI * k) / 3.0));
  }
  std::stable_sort(out.roots.begin(), out.roots.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

double relative_residual(const IntPoly& p, std::complex<double> z, long bits) {
  mp::PrecisionScope scope(bits);
  mp::Complex w(z);
  mp::Real az = mp::abs(w);
  mp::Complex acc(0.0);
  mp::Real scale(0.0);
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * w + mp::Complex(mp::Real(p.coeffs()[k]), mp::Real(0.0));
    scale = scale * az + mp::abs(mp::Real(p.coeffs()[k]));
  }
  if (scale.is_zero()) return 0.0;
  return (mp::abs(acc) / scale).to_double();
}

}  // namespace qes

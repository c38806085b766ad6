#include "qes/exact_poly.hpp"

#include <algorithm>
#include <sstream>

namespace qes {

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& p, const ExactPoly& q) {
  if (q.is_zero()) throw Error("divmod: division by the zero polynomial");
  if (p.degree() < q.degree()) return {ExactPoly({}, p.var()), p};
  std::vector<mpq_class> r = p.coeffs();
  const auto& d = q.coeffs();
  const std::size_t dq = d.size() - 1;
  std::vector<mpq_class> quot(r.size() - dq, mpq_class(0));
  for (std::size_t k = r.size(); k-- > dq;) {
    if (r[k] == 0) continue;
    mpq_class f = r[k] / d[dq];
    quot[k - dq] = f;
    for (std::size_t j = 0; j <= dq; ++j) r[k - dq + j] -= f * d[j];
  }
  r.resize(dq);
  return {ExactPoly(std::move(quot), p.var()), ExactPoly(std::move(r), p.var())};
}

ExactPoly exact_div(const ExactPoly& p, const ExactPoly& q) {
  auto [quot, rem] = divmod(p, q);
  if (!rem.is_zero()) throw NotDivisible("exact_div: nonzero remainder " + to_string(rem));
  return quot;
}

IntPoly exact_div(const IntPoly& p, const IntPoly& q) {
  if (q.is_zero()) throw Error("exact_div: division by the zero polynomial");
  if (p.is_zero()) return IntPoly({}, p.var());
  if (p.degree() < q.degree()) throw NotDivisible("exact_div: divisor degree exceeds dividend degree");
  std::vector<mpz_class> r = p.coeffs();
  const auto& d = q.coeffs();
  const std::size_t dq = d.size() - 1;
  const mpz_class& lead = d[dq];
  std::vector<mpz_class> quot(r.size() - dq, mpz_class(0));
  mpz_class f, rem;
  for (std::size_t k = r.size(); k-- > dq;) {
    if (r[k] == 0) continue;
    mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r[k].get_mpz_t(), lead.get_mpz_t());
    if (rem != 0) throw NotDivisible("exact_div: quotient is not integral");
    quot[k - dq] = f;
    for (std::size_t j = 0; j <= dq; ++j) r[k - dq + j] -= f * d[j];
  }
  for (std::size_t k = 0; k < dq; ++k)
    if (r[k] != 0) throw NotDivisible("exact_div: nonzero remainder");
  return IntPoly(std::move(quot), p.var());
}

IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q) {
  if (q.is_zero()) throw Error("pseudo_remainder: zero divisor");
  if (p.degree() < q.degree()) return p;
  std::vector<mpz_class> r = p.coeffs();
  const auto& d = q.coeffs();
  const std::size_t dq = d.size() - 1;
  const mpz_class& lead = d[dq];
  // deg p - deg q + 1 elimination steps, each scaling by lead.
  for (std::size_t k = r.size(); k-- > dq;) {
    mpz_class f = r[k];
    for (auto& x : r) x *= lead;
    for (std::size_t j = 0; j <= dq; ++j) r[k - dq + j] -= f * d[j];
  }
  r.resize(dq);
  return IntPoly(std::move(r), p.var());
}

mpz_class content(const IntPoly& p) {
  mpz_class g(0);
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly divide_coefficients(const IntPoly& p, const mpz_class& d) {
  std::vector<mpz_class> v = p.coeffs();
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return IntPoly(std::move(v), p.var());
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  mpz_class g = content(p);
  if (g == 1) return p;
  return divide_coefficients(p, g);
}

ExactPoly to_exact(const IntPoly& p) {
  std::vector<mpq_class> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return ExactPoly(std::move(v), p.var());
}

IntPoly clear_denominators(const ExactPoly& p) {
  mpz_class l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    mpz_class t = l / c.get_den();
    v.emplace_back(t * c.get_num());
  }
  return IntPoly(std::move(v), p.var());
}

ExactPoly make_monic(const ExactPoly& p) {
  if (p.is_zero()) return p;
  mpq_class inv = 1 / p.leading();
  return p * inv;
}

ExactPoly gcd(const ExactPoly& p, const ExactPoly& q) {
  if (p.is_zero()) return make_monic(q);
  if (q.is_zero()) return make_monic(p);
  IntPoly a = primitive_part(clear_denominators(p));
  IntPoly b = primitive_part(clear_denominators(q));
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return make_monic(to_exact(a));
}

IntPoly taylor_shift(const IntPoly& p, const mpz_class& s) {
  std::vector<mpz_class> c = p.coeffs();
  const std::size_t n = c.size();
  // Repeated synthetic division (Horner's method for shifts), O(n^2).
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) c[k] += s * c[k + 1];
  return IntPoly(std::move(c), p.var());
}

namespace {
template <class T>
std::string poly_to_string(const DensePoly<T>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    const T& c = p.coeffs()[k];
    if (c == 0) continue;
    T mag = c < 0 ? T(-c) : c;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = (mag == 1);
    if (!unit || k == 0) os << mag.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << p.var();
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}
}  // namespace

std::string to_string(const ExactPoly& p) { return poly_to_string(p); }
std::string to_string(const IntPoly& p) { return poly_to_string(p); }

std::vector<std::string> coefficient_strings(const ExactPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

std::vector<std::string> coefficient_strings(const IntPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

IntPoly int_poly_from_strings(const std::vector<std::string>& coeffs, std::string var) {
  std::vector<mpz_class> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) v.emplace_back(s, 10);
  return IntPoly(std::move(v), std::move(var));
}

ExactPoly exact_poly_from_strings(const std::vector<std::string>& coeffs, std::string var) {
  std::vector<mpq_class> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) {
    mpq_class q(s, 10);
    q.canonicalize();
    v.push_back(q);
  }
  return ExactPoly(std::move(v), std::move(var));
}

int BivariatePoly::degree_a() const {
  int d = -1;
  for (const auto& r : rows_) d = std::max(d, r.degree());
  return d;
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (!rows_[i].is_zero()) d = std::max(d, static_cast<int>(i) + rows_[i].degree());
  return d;
}

IntPoly BivariatePoly::at_a(const mpz_class& a) const {
  std::vector<mpz_class> v;
  v.reserve(rows_.size());
  for (const auto& r : rows_) v.push_back(r.eval(a));
  return IntPoly(std::move(v), "lambda");
}

ExactPoly BivariatePoly::at_a(const mpq_class& a) const {
  std::vector<mpq_class> v;
  v.reserve(rows_.size());
  for (const auto& r : rows_) {
    mpq_class acc(0);
    for (std::size_t k = r.size(); k-- > 0;) acc = acc * a + mpq_class(r.coeffs()[k]);
    v.push_back(acc);
  }
  return ExactPoly(std::move(v), "lambda");
}

BivariatePoly BivariatePoly::derivative_lambda() const {
  if (rows_.size() <= 1) return {};
  std::vector<IntPoly> out;
  for (std::size_t i = 1; i < rows_.size(); ++i) out.push_back(rows_[i] * mpz_class(static_cast<unsigned long>(i)));
  return BivariatePoly(std::move(out));
}

BivariatePoly BivariatePoly::transposed() const {
  int da = degree_a();
  if (da < 0) return {};
  std::vector<IntPoly> out;
  for (int j = 0; j <= da; ++j) {
    std::vector<mpz_class> v;
    for (const auto& r : rows_) v.push_back(r.coeff(static_cast<std::size_t>(j)));
    out.emplace_back(std::move(v), "lambda");
  }
  return BivariatePoly(std::move(out));
}

}  // namespace qes

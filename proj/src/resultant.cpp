#include "qes/resultant.hpp"

#include <algorithm>

#include "qes/parallel.hpp"

namespace qes {

std::vector<std::vector<mpz_class>> sylvester_matrix(const IntPoly& p, const IntPoly& q, int deg_p, int deg_q) {
  const int n = deg_p + deg_q;
  std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
  for (int r = 0; r < deg_q; ++r)
    for (int k = 0; k <= deg_p; ++k) m[r][r + k] = p.coeff(static_cast<std::size_t>(deg_p - k));
  for (int r = 0; r < deg_p; ++r)
    for (int k = 0; k <= deg_q; ++k) m[deg_q + r][r + k] = q.coeff(static_cast<std::size_t>(deg_q - k));
  return m;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  mpz_class d = m[n - 1][n - 1];
  return sign < 0 ? mpz_class(-d) : d;
}

mpz_class resultant_sylvester(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  if (p.degree() == 0 && q.degree() == 0) return 1;
  return bareiss_determinant(sylvester_matrix(p, q, p.degree(), q.degree()));
}

namespace {

mpz_class pow_z(const mpz_class& b, long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

mpz_class resultant(const IntPoly& p, const IntPoly& q) {
  // Subresultant algorithm (Cohen, A Course in Computational Algebraic Number Theory, 3.3.7).
  if (p.is_zero() || q.is_zero()) return 0;
  IntPoly A = p, B = q;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if (A.degree() % 2 == 1 && B.degree() % 2 == 1) s = -1;
  }
  if (B.degree() == 0) return s * pow_z(B.leading(), A.degree());
  mpz_class ca = content(A), cb = content(B);
  A = divide_coefficients(A, ca);
  B = divide_coefficients(B, cb);
  mpz_class t = pow_z(ca, B.degree()) * pow_z(cb, A.degree());
  mpz_class g(1), h(1);
  while (true) {
    int delta = A.degree() - B.degree();
    if (A.degree() % 2 == 1 && B.degree() % 2 == 1) s = -s;
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    B = divide_coefficients(R, g * pow_z(h, delta));
    g = A.leading();
    h = delta == 0 ? h : divexact(pow_z(g, delta), pow_z(h, delta - 1));
    if (B.is_zero()) return 0;
    if (B.degree() == 0) break;
  }
  int da = A.degree();
  h = divexact(pow_z(B.leading(), da), pow_z(h, da - 1));
  return s * t * h;
}

IntPoly interpolate_consecutive(const std::vector<mpz_class>& values, const mpz_class& s) {
  if (values.empty()) return IntPoly({}, "a");
  const std::size_t m = values.size();
  // Forward differences: c_k = Delta^k y_0 / k! are the falling-factorial coordinates.
  std::vector<mpz_class> d = values;
  std::vector<mpz_class> c(m);
  mpz_class fact(1);
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d[0].get_mpz_t(), fact.get_mpz_t());
    if (r != 0) throw NotDivisible("interpolate_consecutive: values do not come from an integer polynomial");
    c[k] = q;
    for (std::size_t i = 0; i + 1 < m - k; ++i) d[i] = d[i + 1] - d[i];
  }
  // g(x) = c_0 + x (c_1 + (x - 1)(c_2 + ...)), evaluated in the monomial basis.
  std::vector<mpz_class> g{c[m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    // g <- (x - k) g + c_k
    std::vector<mpz_class> ng(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      ng[i + 1] += g[i];
      ng[i] -= g[i] * static_cast<unsigned long>(k);
    }
    ng[0] += c[k];
    g = std::move(ng);
  }
  // values were taken at x = s + k; undo the shift.
  return taylor_shift(IntPoly(std::move(g), "a"), -s);
}

namespace {

IntPoly eval_other(const BivariatePoly& p, Variable eliminate, const mpz_class& x) {
  if (eliminate == Variable::lambda) return p.at_a(x);
  return p.transposed().at_a(x);
}

int degree_in(const BivariatePoly& p, Variable v) {
  return v == Variable::lambda ? p.degree_lambda() : p.degree_a();
}

int degree_other(const BivariatePoly& p, Variable eliminate) {
  return eliminate == Variable::lambda ? p.degree_a() : p.degree_lambda();
}

}  // namespace

IntPoly resultant(const BivariatePoly& p, const BivariatePoly& q, Variable eliminate, std::optional<int> degree_bound,
                  int jobs) {
  const int dp = degree_in(p, eliminate), dq = degree_in(q, eliminate);
  if (dp < 1 || dq < 1) throw Error("resultant: both inputs need positive degree in the eliminated variable");
  const int generic = dp * std::max(0, degree_other(q, eliminate)) + dq * std::max(0, degree_other(p, eliminate));
  const int D = degree_bound ? *degree_bound : generic;
  const std::size_t count = static_cast<std::size_t>(D) + 2;  // one point beyond the bound as a check
  const mpz_class s = -mpz_class(D / 2);
  std::vector<mpz_class> vals(count);
  parallel_for(count, jobs, [&](std::size_t k) {
    mpz_class x = s + mpz_class(static_cast<unsigned long>(k));
    IntPoly pa = eval_other(p, eliminate, x);
    IntPoly qa = eval_other(q, eliminate, x);
    // Evaluation commutes with the formal Sylvester determinant; the PRS route
    // agrees with it only when neither leading coefficient vanishes.
    if (pa.degree() == dp && qa.degree() == dq) vals[k] = resultant(pa, qa);
    else vals[k] = bareiss_determinant(sylvester_matrix(pa, qa, dp, dq));
  });
  std::vector<mpz_class> head(vals.begin(), vals.end() - 1);
  IntPoly r = interpolate_consecutive(head, s);
  mpz_class xcheck = s + mpz_class(static_cast<unsigned long>(count - 1));
  if (r.eval(xcheck) != vals.back())
    throw DegreeMismatch("resultant: degree bound " + std::to_string(D) + " is too small");
  r.set_var(eliminate == Variable::lambda ? "a" : "lambda");
  return r;
}

IntPoly discriminant_lambda(const BivariatePoly& p, std::optional<int> degree_bound, int jobs) {
  return resultant(p, p.derivative_lambda(), Variable::lambda, degree_bound, jobs);
}

}  // namespace qes

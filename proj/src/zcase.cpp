#include "qes/zcase.hpp"

#include <algorithm>
#include <chrono>

#include "qes/real_roots.hpp"
#include "qes/spectral.hpp"

namespace qes {

namespace {

mpq_class q_of(long v) { return mpq_class(v); }

// (n-3l+2)(n-3l+3)(3l-2)(3l-1) and the two shifted variants.
long coef_p(int n, int l) { return static_cast<long>(n - 3 * l + 2) * (n - 3 * l + 3) * (3 * l - 2) * (3 * l - 1); }
long coef_q(int n, int l) { return static_cast<long>(n - 3 * l + 1) * (n - 3 * l + 2) * (3 * l - 1) * (3 * l); }
long coef_r(int n, int l) { return static_cast<long>(n - 3 * l) * (n - 3 * l + 1) * (3 * l) * (3 * l + 1); }

}  // namespace

std::vector<PQRTriple> pqr_sequences(int n) {
  if (n < 1) throw Error("pqr_sequences: n must be positive");
  const int lmax = (n + 1) / 3;
  const ExactPoly xi({mpq_class(0), mpq_class(1)}, "xi");
  std::vector<PQRTriple> out;
  PQRTriple t0;
  t0.n = n;
  t0.P = t0.Q = t0.R = ExactPoly({mpq_class(1)}, "xi");
  t0.p_is_minor = true;
  t0.q_is_minor = 1 <= n + 1;
  t0.r_is_minor = 2 <= n + 1;
  out.push_back(t0);
  for (int l = 1; l <= lmax; ++l) {
    const PQRTriple& prev = out.back();
    PQRTriple t;
    t.n = n;
    t.l = l;
    t.P = xi * prev.R + prev.P * q_of(coef_p(n, l));
    t.Q = t.P + prev.Q * q_of(coef_q(n, l));
    t.R = t.Q + prev.R * q_of(coef_r(n, l));
    t.p_is_minor = 3 * l <= n + 1;
    t.q_is_minor = 3 * l + 1 <= n + 1;
    t.r_is_minor = 3 * l + 2 <= n + 1;
    for (auto* poly : {&t.P, &t.Q, &t.R}) poly->set_var("xi");
    out.push_back(std::move(t));
  }
  return out;
}

FactorStructure factor_structure(int n) {
  ExactPoly sp = spectral_polynomial(n, mpq_class(0));
  FactorStructure fs;
  fs.r = (n + 1) % 3;
  std::vector<mpq_class> q;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const mpq_class& c = sp.coeffs()[k];
    if (static_cast<int>(k % 3) == fs.r) q.push_back(c);
    else if (c != 0)
      throw StructureViolation("factor_structure: Sp_" + std::to_string(n) + "(0, lambda) has a nonzero coefficient at lambda^" +
                               std::to_string(k));
  }
  fs.q = ExactPoly(std::move(q), "xi");
  return fs;
}

std::string to_string(Interlacing v) {
  return v == Interlacing::interlacing_largest_in_p ? "interlacing-with-largest-in-p" : "not-interlacing";
}

namespace {

RealRootReport roots_or_multiple(const ExactPoly& p, const char* name) {
  try {
    return real_roots(p);
  } catch (const NotSquarefree& e) {
    throw MultipleRoot(std::string("certify_interlacing: ") + name + " has a repeated root");
  }
}

bool overlap(const IsolatingInterval& a, const IsolatingInterval& b) { return !(a.hi < b.lo || b.hi < a.lo); }

}  // namespace

Interlacing certify_interlacing(const ExactPoly& p, const ExactPoly& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp < 0 || dq < 0 || !(dp == dq + 1 || dp == dq))
    throw Error("certify_interlacing: need deg p = deg q + 1 or deg p = deg q");
  if (dp == 0) return Interlacing::interlacing_largest_in_p;
  RealRootReport rp = roots_or_multiple(p, "p");
  RealRootReport rq = dq > 0 ? roots_or_multiple(q, "q") : RealRootReport{};
  if (static_cast<int>(rp.count) != dp || static_cast<int>(rq.count) != dq) return Interlacing::not_interlacing;
  if (dq > 0 && gcd(p, q).degree() > 0) return Interlacing::not_interlacing;
  IntPoly ip = primitive_part(clear_denominators(p));
  IntPoly iq = dq > 0 ? primitive_part(clear_denominators(q)) : IntPoly();
  auto& a = rp.intervals;
  auto& b = rq.intervals;
  // No common roots, so refinement separates every p-interval from every q-interval.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& x : a)
      for (auto& y : b)
        if (overlap(x, y)) {
          x = refine(ip, x, (x.hi - x.lo) / 2);
          y = refine(iq, y, (y.hi - y.lo) / 2);
          changed = true;
        }
  }
  // Expected pattern from the left: p q p ... p (dp = dq + 1) or q p q p ... q p (dp = dq).
  std::vector<std::pair<mpq_class, char>> merged;
  for (const auto& x : a) merged.emplace_back(x.lo, 'p');
  for (const auto& y : b) merged.emplace_back(y.lo, 'q');
  std::sort(merged.begin(), merged.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  char expect = dp == dq + 1 ? 'p' : 'q';
  for (const auto& m : merged) {
    if (m.second != expect) return Interlacing::not_interlacing;
    expect = expect == 'p' ? 'q' : 'p';
  }
  return Interlacing::interlacing_largest_in_p;
}

bool certify_negative_simple(const ExactPoly& p) {
  if (p.degree() <= 0) return true;
  RealRootReport all;
  try {
    all = real_roots(p);
  } catch (const NotSquarefree&) {
    return false;
  }
  if (static_cast<int>(all.count) != p.degree()) return false;
  RealRootReport neg = real_roots(p, RationalRange{std::nullopt, mpq_class(0)});
  return neg.count == all.count && p.coeff(0) != 0;
}

bool CertificationReport::all_ok() const {
  if (!structure_ok) return false;
  return std::all_of(entries.begin(), entries.end(), [](const CertificationEntry& e) { return e.ok; });
}

CertificationReport certify(int n) {
  auto t0 = std::chrono::steady_clock::now();
  CertificationReport rep;
  rep.n = n;
  auto seq = pqr_sequences(n);
  // Structure: lambda^r q(lambda^3) against the top P/Q/R after lambda -> -lambda.
  try {
    FactorStructure fs = factor_structure(n);
    const PQRTriple& top = seq.back();
    const ExactPoly& t = (n + 1) % 3 == 0 ? top.P : ((n + 1) % 3 == 1 ? top.Q : top.R);
    // Sp(lambda) = D(-lambda) = (-1)^r lambda^r T(-xi).
    std::vector<mpq_class> c = t.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
      if ((k + static_cast<std::size_t>(fs.r)) % 2 == 1) c[k] = -c[k];
    rep.structure_ok = ExactPoly(c, "xi") == fs.q;
  } catch (const StructureViolation&) {
    rep.structure_ok = false;
  }
  auto add = [&](int l, std::string what, bool ok) { rep.entries.push_back({l, std::move(what), ok}); };
  auto positive = [](const ExactPoly& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const mpq_class& c) { return c > 0; });
  };
  auto chain = [&](int l, const std::string& label, const ExactPoly& p, const ExactPoly& q) {
    bool ok;
    try {
      ok = certify_interlacing(p, q) == Interlacing::interlacing_largest_in_p;
    } catch (const MultipleRoot&) {
      ok = false;
    }
    add(l, label, ok);
  };
  const ExactPoly xi({mpq_class(0), mpq_class(1)}, "xi");
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const PQRTriple& t = seq[i];
    const PQRTriple& pr = seq[i - 1];
    const int l = t.l;
    if (t.p_is_minor) {
      add(l, "P positive coefficients", positive(t.P));
      add(l, "P negative simple", certify_negative_simple(t.P));
      chain(l, "xiR(l-1) <- P(l)", xi * pr.R, t.P);
      chain(l, "P(l) <- P(l-1)", t.P, pr.P);
    }
    if (t.q_is_minor) {
      add(l, "Q positive coefficients", positive(t.Q));
      add(l, "Q negative simple", certify_negative_simple(t.Q));
      chain(l, "P(l) <- Q(l)", t.P, t.Q);
      chain(l, "Q(l) <- Q(l-1)", t.Q, pr.Q);
    }
    if (t.r_is_minor) {
      add(l, "R positive coefficients", positive(t.R));
      add(l, "R negative simple", certify_negative_simple(t.R));
      chain(l, "Q(l) <- R(l)", t.Q, t.R);
      chain(l, "R(l) <- R(l-1)", t.R, pr.R);
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

nlohmann::json to_json(const CertificationReport& r, bool with_timing) {
  nlohmann::json j;
  j["n"] = r.n;
  j["structure_ok"] = r.structure_ok;
  j["all_ok"] = r.all_ok();
  auto arr = nlohmann::json::array();
  for (const auto& e : r.entries) arr.push_back({{"l", e.l}, {"check", e.check}, {"ok", e.ok}});
  j["entries"] = arr;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace qes

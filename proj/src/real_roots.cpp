#include "qes/real_roots.hpp"

#include <algorithm>

namespace qes {

std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
  std::vector<IntPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  IntPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(primitive_part(d));
  while (true) {
    const IntPoly& a = seq[seq.size() - 2];
    const IntPoly& b = seq.back();
    if (b.degree() == 0) break;
    // prem = lc(b)^k * a mod b; flip the sign if that factor is negative so the
    // result is a positive multiple of the Euclidean remainder, then negate.
    IntPoly r = pseudo_remainder(a, b);
    int k = a.degree() - b.degree() + 1;
    bool negative_scale = (b.leading() < 0) && (k % 2 == 1);
    if (!negative_scale) r = -r;
    if (r.is_zero()) break;
    seq.push_back(primitive_part(r));
  }
  return seq;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  // sign of den^deg * p(num/den); den > 0 for canonical rationals.
  if (p.is_zero()) return 0;
  const mpz_class& u = x.get_num();
  const mpz_class& v = x.get_den();
  mpz_class acc(0), vpow(1);
  const auto& c = p.coeffs();
  // Horner in homogeneous form: acc = sum c_k u^k v^(d-k)
  acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    vpow *= v;
    acc = acc * u + c[k] * vpow;
  }
  return sgn(acc);
}

namespace {

int variations_at(const std::vector<IntPoly>& seq, const mpq_class& x) {
  int v = 0, prev = 0;
  for (const auto& s : seq) {
    int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++v;
    prev = sg;
  }
  return v;
}

// Number of roots in (lo, hi].
int count_between(const std::vector<IntPoly>& seq, const mpq_class& lo, const mpq_class& hi) {
  return variations_at(seq, lo) - variations_at(seq, hi);
}

void isolate(const IntPoly& p, const std::vector<IntPoly>& seq, const mpq_class& lo, const mpq_class& hi,
             int count, std::vector<IsolatingInterval>& out) {
  // Invariant: exactly count roots in (lo, hi].
  if (count == 0) return;
  if (count == 1) {
    out.push_back({lo, hi});
    return;
  }
  mpq_class mid = (lo + hi) / 2;
  int left = count_between(seq, lo, mid);
  isolate(p, seq, lo, mid, left, out);
  isolate(p, seq, mid, hi, count - left, out);
}

}  // namespace

mpq_class root_bound(const IntPoly& p) {
  // Fujiwara: |z| < 2 max_k |c_{d-k}/c_d|^(1/k), rounded up to a power of two
  // using bit lengths only.
  const int d = p.degree();
  const long lead_bits = static_cast<long>(mpz_sizeinbase(p.leading().get_mpz_t(), 2));
  long e = 0;
  for (int k = 1; k <= d; ++k) {
    const mpz_class& c = p.coeffs()[static_cast<std::size_t>(d - k)];
    if (c == 0) continue;
    // |c / lead| < 2^(bits(c) - bits(lead) + 1)
    long lg = static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)) - lead_bits + 1;
    long ek = lg <= 0 ? 0 : (lg + k - 1) / k;
    e = std::max(e, ek);
  }
  mpz_class b(1);
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(e + 1));
  return mpq_class(b);
}

RealRootReport real_roots(const ExactPoly& p_in, const RationalRange& range) {
  if (p_in.is_zero()) throw Error("real_roots: zero polynomial");
  ExactPoly g = gcd(p_in, p_in.derivative());
  if (g.degree() > 0) throw NotSquarefree("real_roots: polynomial is not squarefree", coefficient_strings(g));
  IntPoly p = primitive_part(clear_denominators(p_in));
  RealRootReport rep;
  if (p.degree() == 0) return rep;
  auto seq = sturm_sequence(p);
  mpq_class bound = root_bound(p);
  mpq_class lo = range.lo ? *range.lo : mpq_class(-bound);
  mpq_class hi = range.hi ? *range.hi : bound;
  if (lo > hi) return rep;
  // Closed interval [lo, hi]: count (lo, hi] plus a possible root at lo.
  bool root_at_lo = sign_at(p, lo) == 0;
  int inner = count_between(seq, lo, hi);
  rep.count = static_cast<std::size_t>(inner) + (root_at_lo ? 1 : 0);
  if (root_at_lo) rep.intervals.push_back({lo, lo});
  std::vector<IsolatingInterval> found;
  isolate(p, seq, lo, hi, inner, found);
  for (auto& iv : found) {
    // Collapse intervals whose right endpoint is itself the root.
    if (sign_at(p, iv.hi) == 0) iv.lo = iv.hi;
    rep.intervals.push_back(iv);
  }
  std::sort(rep.intervals.begin(), rep.intervals.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });
  return rep;
}

IsolatingInterval refine(const IntPoly& p, IsolatingInterval iv, const mpq_class& width) {
  // The root lies in (lo, hi]; lo may be a neighbouring root, so bisect on the sign at hi.
  if (iv.lo == iv.hi) return iv;
  int shi = sign_at(p, iv.hi);
  if (shi == 0) return {iv.hi, iv.hi};
  while (iv.hi - iv.lo > width) {
    mpq_class mid = (iv.lo + iv.hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return {mid, mid};
    if (sm == shi) iv.hi = mid;
    else iv.lo = mid;
  }
  return iv;
}

}  // namespace qes

#include <doctest.h>

#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/spectral.hpp"
#include "qes/zcase.hpp"

using namespace qes;

TEST_CASE("lambda^r q(lambda^3) structure rebuilds Sp_n(0, .)") {
  for (int n = 1; n <= 20; ++n) {
    FactorStructure fs = factor_structure(n);
    CHECK(fs.r == (n + 1) % 3);
    ExactPoly rebuilt = oracle::naive_mul(ExactPoly::monomial(mpq_class(1), static_cast<std::size_t>(fs.r)), fs.q.inflate(3));
    CHECK(rebuilt == spectral_polynomial(n, mpq_class(0)));
  }
}

TEST_CASE("P, Q, R start at one and have degree l") {
  auto seq = pqr_sequences(9);
  REQUIRE(!seq.empty());
  CHECK(seq[0].P == ExactPoly{1});
  CHECK(seq[0].Q == ExactPoly{1});
  CHECK(seq[0].R == ExactPoly{1});
  for (const auto& t : seq) {
    CHECK(t.P.degree() == t.l);
    CHECK(t.Q.degree() == t.l);
    CHECK(t.R.degree() == t.l);
  }
}

TEST_CASE("interlacing verdicts on hand-made pairs") {
  // roots -1, -3 vs -2: interlacing with the largest root in p
  ExactPoly p = oracle::naive_mul(ExactPoly{1, 1}, ExactPoly{3, 1});
  CHECK(certify_interlacing(p, ExactPoly{2, 1}) == Interlacing::interlacing_largest_in_p);
  CHECK(certify_interlacing(p, ExactPoly{5, 1}) == Interlacing::not_interlacing);
  CHECK(certify_interlacing(p, ExactPoly{mpq_class(1, 2), 1}) == Interlacing::not_interlacing);
  CHECK_THROWS_AS(certify_interlacing(ExactPoly{1, 2, 1}, ExactPoly{2, 1}), MultipleRoot);
  CHECK(certify_negative_simple(p));
  CHECK_FALSE(certify_negative_simple(ExactPoly{-1, 1}));
  CHECK_FALSE(certify_negative_simple(ExactPoly{1, 0, 1}));
}

TEST_CASE("certification for small n") {
  for (int n = 1; n <= 24; ++n) {
    CertificationReport r = certify(n);
    INFO("n = " << n);
    CHECK(r.structure_ok);
    CHECK(r.all_ok());
    if (n >= 3) CHECK(!r.entries.empty());
  }
}

TEST_CASE("report json has no timing unless asked") {
  auto j = to_json(certify(4));
  CHECK_FALSE(j.contains("seconds"));
  CHECK(to_json(certify(4), true).contains("seconds"));
}

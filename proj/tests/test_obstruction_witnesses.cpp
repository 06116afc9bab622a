#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "recbases/errors.hpp"
#include "recbases/obstruction.hpp"
#include "recbases/recurrence.hpp"
#include "recbases/sumset.hpp"
#include "recbases/witnesses.hpp"

using namespace recbases;
using rbtest::R;

namespace {
const RealDescriptor kSqrt2 = R("surd:sqrt(2)");
const RealDescriptor kPhi = R("surd:(1+1*sqrt(5))/2");
}  // namespace

TEST_SUITE("obstruction") {
  TEST_CASE("certificate for N = 35") {
    auto c = certify(kSqrt2, 35, 8);
    REQUIRE(c);
    CHECK(c->k == 2);
    CHECK(c->m == 99);
    REQUIRE(c->gamma_exact);
    CHECK(c->gamma == QuadraticNumber(-3465, 2450, 1, 2));
    CHECK(c->gamma.to_double() == doctest::Approx(-0.17677218591713043586).epsilon(1e-15));
    CHECK(to_double(c->eps0_max) == doctest::Approx(0.2058069).epsilon(1e-6));
    CHECK(c->eps0_max == c->delta / 4);
  }

  TEST_CASE("no certificate when 2 N alpha is far from an odd half") {
    CHECK_FALSE(certify(kSqrt2, 37, 8));
    CHECK_THROWS_AS(certify(kSqrt2, 36, 8), InvalidParity);
    CHECK_THROWS_AS(certify(kSqrt2, 0, 8), InvalidArgument);
  }

  TEST_CASE("make_certificate rejects bad parameters") {
    CHECK_FALSE(make_certificate(kSqrt2, 35, 2, 98));  // m even
    CHECK_FALSE(make_certificate(kSqrt2, 35, 3, 99));  // k odd
    CHECK_FALSE(make_certificate(kSqrt2, 35, 2, 97));  // |gamma| too big
    CHECK(make_certificate(kSqrt2, 35, 2, 99));
  }

  TEST_CASE("verification and tampering") {
    auto c = certify(kSqrt2, 1189, 8);
    REQUIRE(c);
    auto v = verify_certificate(*c, 10000, Rational(1, 10));
    CHECK(v.level == VerificationLevel::AlgebraAndBruteForce);
    CHECK(verify_certificate(*c, 100).level == VerificationLevel::AlgebraOnly);
    auto bad = *c;
    bad.m += 1;
    CHECK(verify_certificate(bad, 10000).level == VerificationLevel::Refuted);
    auto bad2 = *c;
    bad2.eps0_max *= 2;
    CHECK(verify_certificate(bad2, 10000).level == VerificationLevel::Refuted);
  }

  TEST_CASE("json round trip") {
    auto c = certify(kSqrt2, 40391, 8);
    REQUIRE(c);
    auto d = ObstructionCertificate::from_json(c->to_json());
    CHECK(d.N == c->N);
    CHECK(d.k == c->k);
    CHECK(d.m == c->m);
    CHECK(d.gamma == c->gamma);
    CHECK(d.eps0_max == c->eps0_max);
    CHECK(d.to_json() == c->to_json());
  }

  TEST_CASE("certificates also work through an enclosure-only alpha") {
    RealDescriptor e = RealDescriptor::cf_periodic(1, {}, {2});
    auto c = certify(e, 35, 8);
    REQUIRE(c);
    CHECK_FALSE(c->gamma_exact);
    CHECK(c->m == 99);
    CHECK(verify_certificate(*c, 1000).level == VerificationLevel::AlgebraAndBruteForce);
  }

  TEST_CASE("soundness: certified N are outside 2A (random surds)") {
    std::mt19937_64 rng(21);
    int certified = 0;
    for (int t = 0; t < 30; ++t) {
      RealDescriptor a = rbtest::random_surd(rng, 30);
      for (long N = 11; N < 400; N += 2) {
        auto c = certify(a, N, 6);
        if (!c) continue;
        ++certified;
        Rational eps = c->eps0_max / 2;
        RecurrenceSetSpec spec{monomial(a, 2), EpsilonSchedule::constant(eps)};
        auto member = [&](std::uint64_t n) { return contains(spec, n); };
        REQUIRE(find_decomposition(static_cast<std::uint64_t>(N), 2, member).empty());
      }
    }
    CHECK(certified > 20);
  }

  TEST_CASE("rational obstruction scan and exact form") {
    auto scan = rational_obstruction_scan(kSqrt2, 35, 8, 1);
    REQUIRE_FALSE(scan.empty());
    CHECK(scan.front().k == 2);
    CHECK(rational_obstruction_scan(kSqrt2, 36, 8, 1).empty());
    auto f = exact_form(kSqrt2, 35, Rational(3, 20));
    REQUIRE(f);
    CHECK(f->k == 2);
    CHECK(f->m == 99);
    CHECK_FALSE(exact_form(kSqrt2, 35, Rational(1, 4)));
  }

  TEST_CASE("limit check") {
    std::vector<ObstructionCertificate> certs;
    for (long N : {1189L, 40391L}) certs.push_back(*certify(kSqrt2, N, 2));
    QuadraticNumber limit = QuadraticNumber(Rational(-1, 4)) / QuadraticNumber::sqrt(2);
    auto lc = limit_obstruction_check(kSqrt2, certs, 2, 1000, limit);
    CHECK(lc.kind == LimitCheck::Kind::LimitObstruction);
    CHECK(lc.candidate_consistent);
    auto deg = limit_obstruction_check(kSqrt2, {}, 2, 1000, QuadraticNumber(3, -2, 1, 2));
    CHECK(deg.kind == LimitCheck::Kind::Degenerate);
    CHECK(deg.degenerate_n == 1);
  }

  TEST_CASE("gap diagnostic between consecutive witnesses") {
    GapDiagnostic g = gap_bound_diagnostic(kSqrt2, 35, 1189, 2, 2);
    CHECK(g.L == 1154);
    CHECK(g.m == 4);
    CHECK(g.triangle_holds);
    CHECK(g.Q0 == 70);
  }
}

TEST_SUITE("witnesses") {
  TEST_CASE("Pell sequence for sqrt 2 and the N recursion") {
    PellSequence p(2);
    CHECK(p.x() == 3);
    CHECK(p.y() == 2);
    auto w = pell_witnesses_sqrt2(6);
    std::vector<BigInt> Ns;
    for (auto& r : w) Ns.push_back(r.N);
    CHECK(Ns == std::vector<BigInt>{35, 1189, 40391, 1372105, 46611179, BigInt("1583407981")});
    for (std::size_t i = 2; i < Ns.size(); ++i) CHECK(Ns[i] == 34 * Ns[i - 1] - Ns[i - 2]);
    for (auto& r : w) {
      CHECK(r.certificate.k == 2);
      CHECK(reproduce_n(kSqrt2, r) == r.N);
    }
    // eps0_max tends to (1 - 1/(4 sqrt 2))/4 = 0.20580582617584077972
    CHECK(to_double(w.back().certificate.eps0_max) == doctest::Approx(0.20580582617584077972).epsilon(1e-6));
  }

  TEST_CASE("Pell units of other fields") {
    PellSequence p(7);
    CHECK(p.x() == 8);
    CHECK(p.y() == 3);
    PellSequence sq = p.squared();
    CHECK(sq.x() == p.X(2));
    CHECK(sq.y() == p.Y(2));
    auto w = pell_witnesses_surd(kPhi, 3);
    REQUIRE(w.size() == 3);
    for (auto& r : w) {
      CHECK(r.N % 2 == 1);
      CHECK(reproduce_n(kPhi, r) == r.N);
    }
    CHECK_THROWS_AS(pell_witnesses_surd(R("rat:1/2"), 2), DegenerateAlpha);
  }

  TEST_CASE("badly approximable family") {
    auto w = badapprox_witnesses(kSqrt2, 5, 8);
    std::vector<BigInt> Ns;
    for (auto& r : w) Ns.push_back(r.N);
    CHECK(Ns == std::vector<BigInt>{35, 51, 1189, 3465, 40391});
    auto f = badapprox_witnesses(kPhi, 3, 8);
    CHECK(f[0].N == 17);
    for (auto& r : f) CHECK(reproduce_n(kPhi, r) == r.N);
    CHECK_THROWS_AS(badapprox_witnesses(R("surd:sqrt(2)"), 3, 1), UnboundedDigits);
  }

  TEST_CASE("generic family needs the digit pattern") {
    CHECK_THROWS_AS(generic_witnesses(kSqrt2, 3, 2, 500), PatternNotFound);
    CHECK_THROWS_AS(generic_witnesses(kSqrt2, 4, 2, 500), InvalidArgument);
    // 2 alpha = [1; 3, 3, 3, 5, ...] contains (3, 3, 3) at the start
    RealDescriptor a = RealDescriptor::affine(RealDescriptor::cf_periodic(1, {}, {3, 3, 3, 5}), Rational(1, 2), 0);
    auto w = generic_witnesses(a, 3, 3, 400, WitnessOptions{1});
    REQUIRE_FALSE(w.empty());
    for (auto& r : w) {
      CHECK(r.certificate.k == 2);
      CHECK(reproduce_n(a, r) == r.N);
      CHECK(verify_certificate(r.certificate, 5000).level != VerificationLevel::Refuted);
    }
  }

  TEST_CASE("every emitted certificate up to 10^4 survives brute force") {
    std::vector<WitnessRecord> all = pell_witnesses_sqrt2(3);
    for (auto& r : badapprox_witnesses(kSqrt2, 6, 8)) all.push_back(r);
    for (auto& r : badapprox_witnesses(kPhi, 6, 8)) all.push_back(r);
    for (auto& r : all) {
      if (r.N > 10000) continue;
      auto v = verify_certificate(r.certificate, 10000, r.certificate.eps0_max / 2);
      CHECK(v.level == VerificationLevel::AlgebraAndBruteForce);
    }
  }

  TEST_CASE("witness json") {
    auto w = pell_witnesses_sqrt2(1);
    std::string j = w[0].to_json();
    CHECK(j.find("\"N\":35") != std::string::npos);
    CHECK(j.find("pell") != std::string::npos);
  }
}

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "recbases/contfrac.hpp"
#include "recbases/errors.hpp"

using namespace recbases;
using rbtest::R;

namespace {
std::vector<long> as_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}
}  // namespace

TEST_SUITE("contfrac") {
  TEST_CASE("rational expansion terminates") {
    CFExpansion cf(R("rat:7/3"));
    CHECK_FALSE(cf.extend(10));
    CHECK(cf.terminated());
    CHECK(cf.to_string(10) == "[2;3]");
    CHECK_THROWS_AS(cf.digit(2), RationalTerminated);
  }

  TEST_CASE("surd digits and periods (integer recurrence oracle)") {
    CHECK(as_longs(CFExpansion(R("surd:sqrt(7)")).digits(8)) == std::vector<long>{1, 1, 1, 4, 1, 1, 1, 4});
    CHECK(as_longs(CFExpansion(R("surd:sqrt(13)")).digits(10)) == std::vector<long>{1, 1, 1, 1, 6, 1, 1, 1, 1, 6});
    CFExpansion s7(R("surd:sqrt(7)"));
    s7.extend(40);
    auto p = s7.periodicity();
    REQUIRE(p);
    CHECK(p->period == 4);
    CHECK(p->start == 1);
  }

  TEST_CASE("convergents of sqrt 2") {
    CFExpansion cf(R("surd:sqrt(2)"));
    auto c = convergents(cf, 12);
    REQUIRE(c.size() == 13);
    CHECK(c[5].p == 99);
    CHECK(c[5].q == 70);
    CHECK(c[12].p == 47321);
    CHECK(c[12].q == 33461);
  }

  TEST_CASE("error terms against high-precision values") {
    // delta_n = q_n^2 (alpha - p_n/q_n), computed independently at 80 digits
    const double s2[] = {0.4142135623730950488,  -0.34314575050761980479, 0.35533905932737622004,
                         -0.35324701827431297256, 0.35360595577293604222, -0.35354437183426087173,
                         0.35355493796768882503,  -0.35355312510579627569};
    const double phi[] = {0.6180339887498948482,  -0.3819660112501051518, 0.47213595499957939282,
                          -0.43769410125094636616, 0.45084971874737120511, -0.44582472000672971491,
                          0.44774409873222934658,  -0.44701096129637194178};
    for (std::size_t n = 0; n < 8; ++n) {
      ErrorTerm e = error_term(R("surd:sqrt(2)"), n);
      CHECK(e.exact);
      CHECK(e.approx() == doctest::Approx(s2[n]).epsilon(1e-14));
      CHECK(error_term(R("surd:(1+1*sqrt(5))/2"), n).approx() == doctest::Approx(phi[n]).epsilon(1e-14));
    }
  }

  TEST_CASE("delta estimate on a constant window") {
    std::vector<BigInt> w(9, BigInt(2));
    // all digits 2: the estimate converges to 1/(2 sqrt 2)
    Rational e = delta_estimate(w, 0, 4);
    CHECK(to_double(e) == doctest::Approx(0.35355).epsilon(1e-3));
    CHECK(to_double(delta_estimate(w, 1, 4)) == doctest::Approx(-to_double(e)));
    std::vector<BigInt> small{1, 2, 1};
    CHECK(delta_estimate(small, 0, 1) == Rational(3, 4));
    CHECK_THROWS_AS(delta_estimate(small, 0, 2), InvalidArgument);
  }

  TEST_CASE("determinant identity on random inputs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
      CFExpansion cf(rbtest::random_surd(rng));
      auto c = convergents(cf, 200);
      for (std::size_t n = 0; n + 1 < c.size(); ++n) {
        BigInt det = c[n].q * c[n + 1].p - c[n + 1].q * c[n].p;
        REQUIRE(det == ((n % 2) ? -1 : 1));
      }
    }
  }

  TEST_CASE("finite cf") {
    std::vector<BigInt> d{2, 3};
    CHECK(finite_cf(d) == Rational(7, 3));
  }

  TEST_CASE("legendre and best approximations") {
    RealDescriptor s2 = R("surd:sqrt(2)");
    CHECK(legendre_check(99, 70, s2));
    CHECK_FALSE(legendre_check(10, 7, s2));
    CHECK(is_best_approx(99, 70, s2));
    CHECK_FALSE(is_best_approx(10, 7, s2));
    CHECK(least_denominator(s2, Rational(1, 100)) == 70);
  }

  TEST_CASE("cf stream with a generator round-trips") {
    RealDescriptor x = RealDescriptor::cf_periodic(0, {1, 2}, {3});
    CFExpansion cf(R(x.serialize()));
    CHECK(as_longs(cf.digits(5)) == std::vector<long>{1, 2, 3, 3, 3});
  }
}

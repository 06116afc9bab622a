#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "recbases/equidist.hpp"
#include "recbases/recurrence.hpp"

using namespace recbases;
using rbtest::R;

TEST_SUITE("equidist") {
  TEST_CASE("orbit hits") {
    RealDescriptor s2 = R("surd:sqrt(2)");
    CHECK_FALSE(orbit_hits(s2, 35, Rational(1, 10)));
    CHECK_FALSE(orbit_hits(s2, 36, Rational(1, 10)));
    auto h = orbit_hits(s2, 37, Rational(1, 10));
    REQUIRE(h);
    CHECK(*h == 0);
  }

  TEST_CASE("orbit hits agree with sumset membership") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      RealDescriptor a = rbtest::random_surd(rng);
      Rational eps(1 + static_cast<long>(rng() % 20), 100);
      RecurrenceSetSpec spec{monomial(a, 2), EpsilonSchedule::constant(eps)};
      Bitset mem = enumerate(spec, 600);
      for (std::uint64_t N = 1; N <= 600; N += 7) {
        bool in2a = false;
        for (std::uint64_t n = 0; n <= N / 2 && !in2a; ++n) in2a = mem.test(n) && mem.test(N - n);
        REQUIRE(orbit_hits(a, N, eps).has_value() == in2a);
      }
    }
  }

  TEST_CASE("Weyl sums against an 80-digit reference") {
    Polynomial lin = monomial(R("surd:sqrt(2)"), 1);
    WeylSum w = weyl_sum(lin, {1}, 10000);
    CHECK(w.magnitude == doctest::Approx(4.28777242376422e-5).epsilon(1e-9));
    CHECK(w.error_bound < 1e-12);
    Polynomial quad = monomial(R("surd:sqrt(2)"), 2);
    CHECK(weyl_sum(quad, {1}, 1000).magnitude == doctest::Approx(0.016463756473887).epsilon(1e-10));
  }

  TEST_CASE("trivial frequencies") {
    Polynomial quad = monomial(R("surd:sqrt(2)"), 2);
    CHECK(weyl_sum(quad, {0}, 500).magnitude == 1.0);
    Polynomial half = monomial(R("rat:1/2"), 1);
    CHECK(weyl_sum(half, {2}, 333).magnitude == 1.0);
  }

  TEST_CASE("integer translation of the constant term leaves |S| unchanged") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
      RealDescriptor a = rbtest::random_surd(rng);
      long shift = static_cast<long>(rng() % 50) - 25;
      Polynomial p{{2, a}, {0, R("rat:1/7")}};
      Polynomial q{{2, a}, {0, RealDescriptor::rational(Rational(1, 7) + shift)}};
      std::vector<long> f{1 + static_cast<long>(rng() % 3), static_cast<long>(rng() % 5)};
      WeylSum x = weyl_sum(p, f, 2000), y = weyl_sum(q, f, 2000);
      CHECK(std::abs(x.magnitude - y.magnitude) <= x.error_bound + y.error_bound);
    }
  }

  TEST_CASE("verdicts") {
    RealDescriptor s2 = R("surd:sqrt(2)");
    // (n^2 sqrt 2, 70 sqrt 2 n) over N = 35: the second coordinate sits near an integer
    Polynomial pair{{2, s2}, {1, RealDescriptor::affine(s2, 70, 0)}};
    Verdict v = equidist_verdict(pair, 35, Rational(1, 2), 4);
    CHECK(v.obstruction);
    CHECK(v.freq == std::vector<long>{0, 1});
    Verdict e = equidist_verdict(monomial(s2, 2), 10000, Rational(1, 20), 8);
    CHECK_FALSE(e.obstruction);
    CHECK(e.scanned == 8);
    CHECK(equidist_verdict(monomial(s2, 2), 1, Rational(1, 2), 2).obstruction);
  }

  TEST_CASE("frequency order") {
    auto f = frequency_order(2, 1);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == std::vector<long>{0, 1});
    CHECK(f[1] == std::vector<long>{1, -1});
    CHECK(frequency_order(1, 5).size() == 5);
    CHECK(frequency_order(3, 2).size() == (125 - 1) / 2);
  }

  TEST_CASE("smoothness norms flag the (1, -1) combination at a witness") {
    Polynomial p = monomial(R("surd:sqrt(2)"), 2);
    auto entries = smoothness_obstruction(p, 35, {-2, 2}, {-2, 2});
    REQUIRE(entries.size() == 24);
    CHECK(std::labs(entries[0].k) == 1);
    CHECK(entries[0].l == -entries[0].k);
    CHECK(to_double(entries[0].norm.value.midpoint()) == doctest::Approx(0.1767722).epsilon(1e-5));
    // k p(n) + l p(N - n) expands with c_1 = -2 l N alpha
    auto c = pair_coefficients(p, 35, 1, -1);
    REQUIRE(c.size() == 3);
    CHECK(to_double(c[1].enclose(40).midpoint()) == doctest::Approx(70 * std::sqrt(2.0)).epsilon(1e-12));
  }
}

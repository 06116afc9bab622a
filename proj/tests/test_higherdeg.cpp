#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "recbases/errors.hpp"
#include "recbases/higherdeg.hpp"

using namespace recbases;
using rbtest::R;

TEST_SUITE("higherdeg") {
  TEST_CASE("telescoping identity on random triples") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 1000; ++t) {
      BigInt a = static_cast<long>(rng() % 2000000) - 1000000;
      BigInt b = static_cast<long>(rng() % 2000000) - 1000000;
      unsigned d = 1 + static_cast<unsigned>(rng() % 9);
      REQUIRE(telescoping_identity(a, b, d));
    }
  }

  TEST_CASE("gamma construction levels") {
    GammaParams p;
    p.branch_bits = "0101";
    GammaConstruction g = gamma_construct(p);
    auto Ns = g.N_sequence();
    REQUIRE(Ns.size() == 4);
    CHECK(Ns[0] == 11);
    CHECK(Ns[1] == 58565);  // least odd >= 4 * 11^4
    for (std::size_t i = 1; i < Ns.size(); ++i) {
      CHECK(Ns[i] % 2 == 1);
      CHECK(Ns[i] >= 4 * Ns[i - 1] * Ns[i - 1] * Ns[i - 1] * Ns[i - 1]);
      CHECK(Ns[i] - 2 < 4 * Ns[i - 1] * Ns[i - 1] * Ns[i - 1] * Ns[i - 1]);
    }
    CHECK(g.levels[0].children == 11);
    CHECK(gamma_constraints_hold(g));
    CHECK(g.alpha.to_interval(64).width() <= pow2(-64));
    CHECK(GammaParams::from_compact(p.to_compact()).to_compact() == p.to_compact());
  }

  TEST_CASE("branch bits pick different alphas") {
    GammaParams a, b;
    a.branch_bits = "0101";
    b.branch_bits = "0100";
    CHECK(gamma_construct(a).enclosure().disjoint(gamma_construct(b).enclosure()));
  }

  TEST_CASE("bad gamma parameters") {
    GammaParams p;
    p.d = 1;
    CHECK_THROWS_AS(gamma_construct(p), InvalidArgument);
    GammaParams q;
    q.N1 = 12;
    CHECK_THROWS_AS(gamma_construct(q), InvalidArgument);
  }

  TEST_CASE("N_1 and N_2 are outside 2A at eps0 = 0.2") {
    GammaConstruction g = gamma_construct(GammaParams{});
    for (std::size_t i = 0; i < 2; ++i) {
      HighDegOutcome o = verify_highdeg_witness(g.alpha, g.levels[i].N, 3, Rational(1, 5));
      CHECK(o.brute_forced);
      CHECK(o.outcome.level == VerificationLevel::AlgebraAndBruteForce);
      CHECK(o.near_miss_max > 0.2);
    }
    CHECK_THROWS_AS(verify_highdeg_witness(g.alpha, 12, 3, Rational(1, 5)), InvalidParity);
  }

  TEST_CASE("trichotomy") {
    AffineFamilySpec quad{{}, {parse_polynomial("2=surd:sqrt(2)"), parse_polynomial("1=rat:1")}};
    CHECK(family_trichotomy(quad) == Trichotomy::AllDegreeLE2);
    AffineFamilySpec fixed{parse_polynomial("3=surd:sqrt(2)"), {parse_polynomial("1=rat:1")}};
    CHECK(family_trichotomy(fixed) == Trichotomy::FixedLeadingTerm);
    AffineFamilySpec gen{{}, {parse_polynomial("3=rat:1")}};
    CHECK(family_trichotomy(gen) == Trichotomy::GenericBasisExpected);
    AffineFamilySpec dep{{}, {parse_polynomial("2=surd:sqrt(2)"), parse_polynomial("2=surd:sqrt(8)")}};
    CHECK_FALSE(directions_independent(dep));
    CHECK_THROWS_AS(family_trichotomy(dep), InvalidArgument);
  }

  TEST_CASE("trichotomy is invariant under reparameterization") {
    // replace the directions by invertible integer combinations
    std::mt19937_64 rng(17);
    std::vector<Polynomial> dirs{parse_polynomial("3=surd:sqrt(3)|1=rat:1"), parse_polynomial("2=rat:1/2"),
                                 parse_polynomial("1=surd:sqrt(3)")};
    std::vector<Polynomial> bases{{}, parse_polynomial("3=rat:2")};
    for (const auto& base : bases) {
      for (std::size_t n = 1; n <= dirs.size(); ++n) {
        AffineFamilySpec f{base, {dirs.begin(), dirs.begin() + static_cast<long>(n)}};
        Trichotomy expect = family_trichotomy(f);
        for (int t = 0; t < 5; ++t) {
          AffineFamilySpec g = f;
          if (n >= 2) {
            // d_0 <- d_0 + c d_1, unimodular
            long c = 1 + static_cast<long>(rng() % 4);
            Polynomial sum = g.directions[0];
            for (auto term : g.directions[1])
              sum.push_back({term.degree, RealDescriptor::affine(term.coeff, c, 0)});
            g.directions[0] = sum;
          }
          std::reverse(g.directions.begin(), g.directions.end());
          CHECK(family_trichotomy(g) == expect);
        }
      }
    }
  }

  TEST_CASE("effective degree ignores zero coefficients") {
    CHECK(effective_degree(parse_polynomial("3=rat:0|2=surd:sqrt(2)")) == 2);
    CHECK(effective_degree(parse_polynomial("4=rat:1")) == 4);
  }

  TEST_CASE("cubic survey") {
    SumsetReport r = complement_survey_highdeg(R("surd:sqrt(2)"), 3, EpsilonSchedule::parse("const:1/10"), 10000, 2);
    CHECK(r.complement.back() == 150);
  }
}

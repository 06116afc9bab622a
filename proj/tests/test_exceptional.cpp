#include <doctest.h>

#include "helpers.hpp"
#include "recbases/contfrac.hpp"
#include "recbases/errors.hpp"
#include "recbases/exceptional.hpp"

using namespace recbases;
using rbtest::R;

TEST_SUITE("exceptional") {
  TEST_CASE("default digits match a brute-force search") {
    // least a_i with the per-step congruences, searched digit by digit
    const long expect[] = {3, 1, 3, 4, 3, 4, 9, 4, 27, 8, 27, 8, 27, 8, 27, 16, 81, 16, 81, 16, 81, 16, 81, 16};
    auto d = exceptional_digits(ExceptionalAlphaPlan{}, 24);
    for (std::size_t i = 0; i < 24; ++i) CHECK(d[i] == expect[i]);
  }

  TEST_CASE("conditions hold for the default plan") {
    RealDescriptor a = construct_exceptional(ExceptionalAlphaPlan{}, 200);
    auto r = verify_conditions(a, 200, 3);
    CHECK(r.status == ConditionsReport::Status::Pass);
    CHECK(r.recursion_ok);
    CHECK(r.coprime_ok);
    CHECK(r.q2_from <= 100);
    CHECK(r.qp_from <= 100);
    CHECK(verify_conditions(R("surd:sqrt(2)"), 200, 3).status == ConditionsReport::Status::Fail);
    CHECK(verify_conditions(a, 3, 3).status == ConditionsReport::Status::Inconclusive);
  }

  TEST_CASE("growth of log a_i / i decays") {
    RealDescriptor a = construct_exceptional(ExceptionalAlphaPlan{}, 400);
    GrowthProfile g = growth_profile(a, 400);
    CHECK(g.decaying);
    CHECK(g.late_max < g.early_max);
  }

  TEST_CASE("plans serialize both ways") {
    ExceptionalAlphaPlan p;
    p.growth[3] = GrowthSchedule::linear(8, 1);
    CHECK(p.to_compact() == "p=2,3;k=sqrt;k3=lin:8,1;h=4,4");
    ExceptionalAlphaPlan q = ExceptionalAlphaPlan::from_compact(p.to_compact());
    CHECK(q.to_compact() == p.to_compact());
    CHECK(ExceptionalAlphaPlan::from_json(p.to_json()).to_compact() == p.to_compact());
    p.capped = false;
    CHECK(ExceptionalAlphaPlan::from_compact(p.to_compact()).capped == false);
    CHECK_THROWS_AS(ExceptionalAlphaPlan::from_compact("p=2,4;k=sqrt;h=4,4"), InvalidArgument);
  }

  TEST_CASE("a linear schedule also passes; a steep one hits the cap") {
    ExceptionalAlphaPlan lin;
    lin.default_growth = GrowthSchedule::linear(8, 1);
    RealDescriptor a = construct_exceptional(lin, 64);
    CHECK(verify_conditions(a, 64, 3, lin).status == ConditionsReport::Status::Pass);
    ExceptionalAlphaPlan steep;
    steep.default_growth = GrowthSchedule::linear(1, 1);
    CHECK_THROWS_AS(construct_exceptional(steep, 64), ScheduleInfeasible);
  }

  TEST_CASE("descriptor round trip keeps the plan") {
    ExceptionalAlphaPlan p;
    RealDescriptor a = construct_exceptional(p, 50);
    RealDescriptor b = R(a.serialize());
    auto plan = plan_of(b);
    REQUIRE(plan);
    CHECK(plan->to_compact() == p.to_compact());
    CFExpansion ca(a), cb(b);
    for (std::size_t i = 1; i <= 60; ++i) REQUIRE(ca.digit(i) == cb.digit(i));
  }

  TEST_CASE("basis check reports the complement") {
    RealDescriptor a = construct_exceptional(ExceptionalAlphaPlan{}, 200);
    BasisReport b = basis_check(a, Rational(1, 10), 2000);
    CHECK(b.complement.front() == 1);
    REQUIRE(b.largest);
    CHECK(*b.largest == b.complement.back());
  }
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recbases/real.hpp"

namespace recbases {

// Non-decreasing integer schedule i -> k_i.
struct GrowthSchedule {
  enum class Kind { Sqrt, Linear, Constant };
  Kind kind = Kind::Sqrt;
  long div = 8;     // Linear: floor(i/div) + offset
  long offset = 1;
  long value = 1;   // Constant

  long at(std::size_t i) const;
  std::string to_string() const;  // "sqrt", "lin:D,O", "const:K"
  static GrowthSchedule parse(const std::string& text);
  static GrowthSchedule linear(long div, long offset);
};

struct ExceptionalAlphaPlan {
  std::vector<unsigned long> primes{2, 3};
  GrowthSchedule default_growth;              // floor(sqrt(i)), at least 1
  std::map<unsigned long, GrowthSchedule> growth;  // per-prime overrides
  bool capped = true;
  long cap_div = 4;  // h_i = 2^(floor(i/cap_div) + cap_offset)
  long cap_offset = 4;

  const GrowthSchedule& schedule(unsigned long p) const;
  long k(unsigned long p, std::size_t i) const { return schedule(p).at(i); }
  std::optional<BigInt> cap(std::size_t i) const;
  void validate() const;

  // "p=2,3;k=sqrt;k3=lin:8,1;h=4,4" (h=none when uncapped)
  std::string to_compact() const;
  static ExceptionalAlphaPlan from_compact(const std::string& text);
  std::string to_json() const;
  static ExceptionalAlphaPlan from_json(const std::string& text);
};

// Digits a_1..a_count; a_0 = 0.
std::vector<BigInt> exceptional_digits(const ExceptionalAlphaPlan& plan, std::size_t count);

// CFStream over the (unbounded) construction; the first count digits are
// built eagerly so infeasible schedules surface here.
RealDescriptor construct_exceptional(const ExceptionalAlphaPlan& plan, std::size_t count);

// The plan behind a descriptor produced by construct_exceptional.
std::optional<ExceptionalAlphaPlan> plan_of(const RealDescriptor& alpha);

struct ConditionRow {
  std::size_t i = 0;
  BigInt a, q;
  unsigned v2_q = 0, vp_q = 0, v2_a = 0, vp_a = 0;
};

struct ConditionsReport {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Inconclusive;
  unsigned long p_odd = 3;
  std::size_t count = 0;
  std::vector<ConditionRow> rows;  // i = 1..count
  // First index from which the planned target holds through count, per
  // table; SIZE_MAX when it never settles.
  std::size_t q2_from = SIZE_MAX, qp_from = SIZE_MAX, a2_from = SIZE_MAX, ap_from = SIZE_MAX;
  bool recursion_ok = true;  // a_i = (q_i - q_{i-2}) / q_{i-1}
  bool coprime_ok = true;    // gcd(q_i, q_{i-1}) = 1
  std::string detail;
  std::string to_json() const;
};
const char* to_string(ConditionsReport::Status s);

// Targets come from plan, else from the plan behind alpha, else the default plan.
ConditionsReport verify_conditions(const RealDescriptor& alpha, std::size_t count, unsigned long p_odd,
                                   std::optional<ExceptionalAlphaPlan> plan = std::nullopt);

struct GrowthProfile {
  std::vector<std::pair<std::size_t, double>> log_ratio;  // (i, log(a_i)/i)
  double early_max = 0;  // max over i in [count/4, count/2)
  double late_max = 0;   // max over i in [count/2, count]
  bool decaying = false;
};
GrowthProfile growth_profile(const RealDescriptor& alpha, std::size_t count);

struct BasisReport {
  Rational eps0;
  std::uint64_t T = 0;
  std::vector<std::uint64_t> complement;  // of 2A in [1, T]
  std::optional<std::uint64_t> largest;
  std::string to_json() const;
};
BasisReport basis_check(const RealDescriptor& alpha, const Rational& eps0, std::uint64_t T, unsigned threads = 1);

namespace detail {
void register_exceptional_generator();
}

}  // namespace recbases

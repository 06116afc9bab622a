#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recbases/obstruction.hpp"
#include "recbases/recurrence.hpp"
#include "recbases/sumset.hpp"

namespace recbases {

struct GammaParams {
  unsigned d = 3;
  std::string branch_bits;  // '0'/'1' per level; missing levels take '0'
  std::size_t levels = 4;
  BigInt N1 = 11;           // odd
  Rational ratio = 4;       // N_{i+1} = least odd integer >= ratio * N_i^(d+1)

  std::string to_compact() const;  // "d=3;bits=0101;levels=4;n1=11;ratio=4"
  static GammaParams from_compact(const std::string& text);
};

struct GammaLevel {
  BigInt N;
  std::size_t children = 0;  // components of Gamma_i inside the parent
  std::size_t chosen = 0;
  IntervalValue interval;    // chosen component, length 2/N^(d+1)
};

struct GammaConstruction {
  GammaParams params;
  std::vector<GammaLevel> levels;  // level 1..levels
  RealDescriptor alpha;            // enc:gamma:..., refinable past the stated levels
  const IntervalValue& enclosure() const { return levels.back().interval; }
  std::vector<BigInt> N_sequence() const;
  std::string to_json() const;
};

// Throws InvalidArgument for d < 2 or even N1, BranchExhausted when a level
// offers fewer than two children.
GammaConstruction gamma_construct(const GammaParams& params);

// Exact check that the final enclosure lies in every Gamma_i and every
// level interval.
bool gamma_constraints_hold(const GammaConstruction& g);

struct HighDegOutcome {
  VerificationOutcome outcome;
  bool brute_forced = false;
  std::uint64_t near_miss_n = 0;  // minimizes max(||n^d a||, ||(N-n)^d a||)
  double near_miss_max = 0;
  double telescoped = 0;          // ||n^d a - (-1)^d (N-n)^d a|| at the near miss
  std::string to_json() const;
};

HighDegOutcome verify_highdeg_witness(const RealDescriptor& alpha, const BigInt& N, unsigned d, const Rational& eps0,
                                      std::uint64_t brute_cap = 2000000);

// n1^d - (-1)^d n2^d == (n1 + n2) sum_j (-1)^j n1^(d-1-j) n2^j
bool telescoping_identity(const BigInt& n1, const BigInt& n2, unsigned d);

struct AffineFamilySpec {
  Polynomial base;
  std::vector<Polynomial> directions;
};

enum class Trichotomy { AllDegreeLE2, FixedLeadingTerm, GenericBasisExpected };
const char* to_string(Trichotomy t);

// Effective degree: largest degree with a coefficient not known to be zero.
int effective_degree(const Polynomial& p);
// Directions independent over the reals; exact when all coefficients share a
// quadratic field, numeric otherwise.
bool directions_independent(const AffineFamilySpec& family);

Trichotomy family_trichotomy(const AffineFamilySpec& family);

SumsetReport complement_survey_highdeg(const RealDescriptor& alpha, unsigned d, const EpsilonSchedule& eps,
                                       std::uint64_t T, unsigned k, unsigned threads = 1);

namespace detail {
void register_gamma_enclosure();
}

}  // namespace recbases

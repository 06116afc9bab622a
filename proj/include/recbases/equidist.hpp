#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recbases/linear_form.hpp"
#include "recbases/recurrence.hpp"

namespace recbases {

// Least n in [0, N] with ||n^2 alpha|| <= eps0 and ||(N-n)^2 alpha|| <= eps0.
std::optional<std::uint64_t> orbit_hits(const RealDescriptor& alpha, std::uint64_t N, const Rational& eps0);

struct WeylSum {
  double re = 0, im = 0;
  double magnitude = 0;    // |(1/N) sum e(phase(n))|
  double error_bound = 0;  // on magnitude
  unsigned phase_bits = 0;
};

// Sum over n = 1..N of e(sum_t freq[t] * coeff_t * n^degree_t). Phases are
// reduced mod 1 exactly from dyadic enclosures of the coefficients; bits = 0
// picks a precision that keeps the phase error near 2^-60.
WeylSum weyl_sum(const Polynomial& terms, const std::vector<long>& freq, std::uint64_t N, unsigned bits = 0);

struct Verdict {
  bool obstruction = false;
  std::vector<long> freq;  // the obstructing frequency
  WeylSum sum;
  std::size_t scanned = 0;
  bool marginal = false;  // |magnitude - delta| within the error bound even after refinement
  std::string to_json() const;
};

// Frequencies with max |k_t| <= freq_cap, zero excluded and k ~ -k identified
// (first nonzero entry positive), by increasing max-norm then lexicographic.
Verdict equidist_verdict(const Polynomial& terms, std::uint64_t N, const Rational& delta, long freq_cap);

// Frequency order used by equidist_verdict.
std::vector<std::vector<long>> frequency_order(std::size_t dims, long cap);

struct SmoothnessNorm {
  std::uint64_t N = 0;
  std::vector<std::pair<unsigned, IntervalValue>> coefficients;  // (j, ||c_j||), j >= 1
  IntervalValue value;  // max_j N^j ||c_j||
};

struct SmoothnessEntry {
  long k = 0, l = 0;
  SmoothnessNorm norm;
  IntervalValue leading;     // ||(k + (-1)^d l) alpha_d||
  IntervalValue subleading;  // ||(k + (-1)^(d-1) l) alpha_{d-1} + (-1)^(d-1) l d N alpha_d||
};

// Coefficients c_j of k p(n) + l p(N - n) as linear forms in the coefficients of p.
std::vector<LinearForm> pair_coefficients(const Polynomial& p, std::uint64_t N, long k, long l);

// All (k, l) in the ranges except (0, 0), sorted by norm.
std::vector<SmoothnessEntry> smoothness_obstruction(const Polynomial& p, std::uint64_t N,
                                                    std::pair<long, long> k_range, std::pair<long, long> l_range);

}  // namespace recbases

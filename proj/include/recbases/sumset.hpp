#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "recbases/bitset.hpp"
#include "recbases/recurrence.hpp"

namespace recbases {

struct SumsetOptions {
  unsigned threads = 1;
  // re-check every complement element by a direct decomposition search that
  // calls contains() instead of reading the enumerated bitset
  bool verify = false;
};

// X + Y over [0, T] for bitsets of equal size.
Bitset pair_sum(const Bitset& x, const Bitset& y, unsigned threads = 1);
// k-fold sumset of the members, truncated to the same range.
Bitset sumset_bitmap(const Bitset& members, unsigned k, unsigned threads = 1);

struct GapStat {
  std::uint64_t N = 0, next = 0, diff = 0;
  double relative = 0;  // (next - N) / N
  double ratio = 0;     // next / N
};

struct SumsetReport {
  std::string spec_json;
  unsigned k = 2;
  std::uint64_t T = 0;
  std::vector<std::uint64_t> complement;  // N in [1, T] outside kA
  std::map<std::uint64_t, std::size_t> counts_at;
  std::vector<GapStat> gaps;
  std::size_t members = 0;
  bool verified = false;  // set when the direct search confirmed every element

  std::string to_json() const;
  void write_csv(std::ostream& out) const;
};

SumsetReport complement(const RecurrenceSetSpec& spec, unsigned k, std::uint64_t T, const SumsetOptions& opts = {});
// Same, starting from an already enumerated membership bitset.
SumsetReport complement_from_members(const Bitset& members, unsigned k, const std::string& spec_json);

std::vector<GapStat> gap_stats(const std::vector<std::uint64_t>& complement);
std::map<std::uint64_t, std::size_t> counts_at(const std::vector<std::uint64_t>& complement, std::uint64_t T);

// Direct search for n_1 + ... + n_k = N with every n_i passing `member`.
// Returns the decomposition found, or an empty vector.
std::vector<std::uint64_t> find_decomposition(std::uint64_t N, unsigned k,
                                              const std::function<bool(std::uint64_t)>& member);

}  // namespace recbases

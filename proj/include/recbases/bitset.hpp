#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace recbases {

// Allocation cap in bytes for bitsets: RECBASES_MAX_MEM (plain bytes, or with
// a K/M/G suffix), default 4G.
std::size_t max_bitset_bytes();

// Packed bitset over [0, size). One zero padding word sits past the end so
// kernels may read word i+1 while looking at word i.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits);

  std::size_t size() const { return nbits_; }
  std::size_t words() const { return (nbits_ + 63) / 64; }
  const std::uint64_t* data() const { return bits_.data(); }
  std::uint64_t* data() { return bits_.data(); }

  bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const;
  std::vector<std::uint64_t> members() const;
  // bit i -> bit size-1-i
  Bitset reversed() const;
  // zero everything at or past size(), including the padding word
  void clear_tail();
  bool is_subset_of(const Bitset& other) const;

  friend bool operator==(const Bitset& a, const Bitset& b) { return a.nbits_ == b.nbits_ && a.bits_ == b.bits_; }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> bits_{0};
};

// File format: line 1 "RECBASES-BITSET 1", line 2 a JSON header
// {"spec": ..., "T": ..., "count": ..., "words": ...}, then the words as raw
// little-endian uint64.
void write_bitset_file(const std::string& path, const Bitset& bits, const std::string& spec_json);
Bitset read_bitset_file(const std::string& path, std::string* spec_json = nullptr);
void write_members_csv(std::ostream& out, const Bitset& bits);

}  // namespace recbases

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace recbases::kernels {

// Word-level bitset primitives. Every variant must give bit-identical results;
// tests compare them against the scalar reference.
struct BitsetKernels {
  const char* name;
  // dst[0..nwords) |= (src << shift), bits shifted past the end dropped.
  // src must not alias dst.
  void (*or_shifted)(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords, std::size_t shift);
  // true iff some i < nbits has a[i] and b[i + offset]. b must be readable
  // up to word (offset + nbits) / 64 + 1.
  bool (*any_and_offset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nbits, std::size_t offset);
};

const BitsetKernels& scalar();
// nullptr when not built in or the CPU lacks AVX2.
const BitsetKernels* avx2();

// Best available variant, unless overridden by select().
const BitsetKernels& active();
// "auto", "scalar" or "avx2"; returns false if the request cannot be met.
bool select(const std::string& name);

}  // namespace recbases::kernels

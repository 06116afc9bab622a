#include "kernels_impl.hpp"

namespace recbases::kernels::detail {

void or_shifted_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords, std::size_t shift) {
  const std::size_t ws = shift >> 6;
  const unsigned bs = shift & 63;
  if (ws >= nwords) return;
  if (bs == 0) {
    for (std::size_t j = ws; j < nwords; ++j) dst[j] |= src[j - ws];
    return;
  }
  dst[ws] |= src[0] << bs;
  for (std::size_t j = ws + 1; j < nwords; ++j) dst[j] |= (src[j - ws] << bs) | (src[j - ws - 1] >> (64 - bs));
}

bool any_and_offset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t nbits, std::size_t offset) {
  const std::size_t full = nbits >> 6;
  const unsigned rem = nbits & 63;
  const std::uint64_t* bw = b + (offset >> 6);
  const unsigned bs = offset & 63;
  auto word = [&](std::size_t i) {
    std::uint64_t v = bw[i] >> bs;
    if (bs) v |= bw[i + 1] << (64 - bs);
    return v;
  };
  for (std::size_t i = 0; i < full; ++i)
    if (a[i] & word(i)) return true;
  if (rem) {
    std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
    if (a[full] & word(full) & mask) return true;
  }
  return false;
}

}  // namespace recbases::kernels::detail

// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace recbases::kernels::detail {

void or_shifted_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords, std::size_t shift) {
  const std::size_t ws = shift >> 6;
  const unsigned bs = shift & 63;
  if (ws >= nwords) return;
  std::size_t j;
  if (bs == 0) {
    for (j = ws; j + 4 <= nwords; j += 4) {
      __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j - ws));
      __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), _mm256_or_si256(d, s));
    }
    for (; j < nwords; ++j) dst[j] |= src[j - ws];
    return;
  }
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(bs));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - bs));
  dst[ws] |= src[0] << bs;
  for (j = ws + 1; j + 4 <= nwords; j += 4) {
    __m256i s0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j - ws));
    __m256i s1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j - ws - 1));
    __m256i v = _mm256_or_si256(_mm256_sll_epi64(s0, left), _mm256_srl_epi64(s1, right));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), _mm256_or_si256(d, v));
  }
  for (; j < nwords; ++j) dst[j] |= (src[j - ws] << bs) | (src[j - ws - 1] >> (64 - bs));
}

bool any_and_offset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t nbits, std::size_t offset) {
  const std::size_t full = nbits >> 6;
  const unsigned rem = nbits & 63;
  const std::uint64_t* bw = b + (offset >> 6);
  const unsigned bs = offset & 63;
  std::size_t i = 0;
  if (bs == 0) {
    for (; i + 4 <= full; i += 4) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bw + i));
      if (!_mm256_testz_si256(va, vb)) return true;
    }
  } else {
    const __m128i right = _mm_cvtsi32_si128(static_cast<int>(bs));
    const __m128i left = _mm_cvtsi32_si128(static_cast<int>(64 - bs));
    for (; i + 4 <= full; i += 4) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bw + i));
      __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bw + i + 1));
      __m256i vb = _mm256_or_si256(_mm256_srl_epi64(lo, right), _mm256_sll_epi64(hi, left));
      if (!_mm256_testz_si256(va, vb)) return true;
    }
  }
  auto word = [&](std::size_t k) {
    std::uint64_t v = bw[k] >> bs;
    if (bs) v |= bw[k + 1] << (64 - bs);
    return v;
  };
  for (; i < full; ++i)
    if (a[i] & word(i)) return true;
  if (rem) {
    std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
    if (a[full] & word(full) & mask) return true;
  }
  return false;
}

}  // namespace recbases::kernels::detail

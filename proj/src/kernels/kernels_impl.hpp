#pragma once

#include <cstddef>
#include <cstdint>

namespace recbases::kernels::detail {

void or_shifted_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords, std::size_t shift);
bool any_and_offset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t nbits, std::size_t offset);

#ifdef RECBASES_HAVE_AVX2
void or_shifted_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords, std::size_t shift);
bool any_and_offset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t nbits, std::size_t offset);
#endif

}  // namespace recbases::kernels::detail

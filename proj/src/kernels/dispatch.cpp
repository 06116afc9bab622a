#include <atomic>

#include "kernels_impl.hpp"
#include "recbases/kernels.hpp"

namespace recbases::kernels {

namespace {
const BitsetKernels kScalar{"scalar", detail::or_shifted_scalar, detail::any_and_offset_scalar};
#ifdef RECBASES_HAVE_AVX2
const BitsetKernels kAvx2{"avx2", detail::or_shifted_avx2, detail::any_and_offset_avx2};
#endif

const BitsetKernels* detect() {
  const BitsetKernels* v = avx2();
  return v ? v : &kScalar;
}

std::atomic<const BitsetKernels*>& current() {
  static std::atomic<const BitsetKernels*> cur{detect()};
  return cur;
}
}  // namespace

const BitsetKernels& scalar() { return kScalar; }

const BitsetKernels* avx2() {
#ifdef RECBASES_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const BitsetKernels& active() { return *current().load(std::memory_order_relaxed); }

bool select(const std::string& name) {
  if (name == "auto") {
    current().store(detect());
    return true;
  }
  if (name == "scalar") {
    current().store(&kScalar);
    return true;
  }
  if (name == "avx2" && avx2()) {
    current().store(avx2());
    return true;
  }
  return false;
}

}  // namespace recbases::kernels

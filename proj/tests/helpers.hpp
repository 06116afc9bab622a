#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "recbases/real.hpp"

namespace rbtest {

inline recbases::RealDescriptor R(const std::string& s) { return recbases::RealDescriptor::parse(s); }

// Random (a + b sqrt(d)) / c with squarefree d in [2, dmax], b != 0.
inline recbases::RealDescriptor random_surd(std::mt19937_64& rng, long dmax = 50) {
  std::uniform_int_distribution<long> dd(2, dmax), ab(-20, 20), cc(1, 12);
  for (;;) {
    long d = dd(rng);
    if (!recbases::is_squarefree(d)) continue;
    long b = ab(rng);
    if (b == 0) continue;
    return recbases::RealDescriptor::surd(ab(rng), b, cc(rng), d);
  }
}

}  // namespace rbtest

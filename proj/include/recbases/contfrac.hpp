#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recbases/linear_form.hpp"
#include "recbases/real.hpp"

namespace recbases {

struct Convergent {
  long index = -1;
  BigInt p;
  BigInt q;
};

// a_n = a_{n + period} for all n >= start
struct Periodicity {
  std::size_t start = 0;
  std::size_t period = 0;
};

// Lazily extendable continued-fraction expansion of a real. Copies share the
// digit cache, which is internally synchronized.
class CFExpansion {
 public:
  explicit CFExpansion(const RealDescriptor& x);

  const RealDescriptor& source() const;
  BigInt a0() const;
  // a_i, i >= 1 (i = 0 gives a0). Extends on demand; throws RationalTerminated
  // past the end of a finite expansion.
  BigInt digit(std::size_t i) const;
  // Digits a_1..a_count.
  std::vector<BigInt> digits(std::size_t count) const;
  // Number of digits a_1.. the expansion has; only meaningful once terminated.
  std::size_t available() const;
  bool terminated() const;
  // Ensure a_1..a_count exist; returns false if a rational ran out first.
  bool extend(std::size_t count) const;
  // Detected eventual period (quadratic surds only).
  std::optional<Periodicity> periodicity() const;

  // "[a0;a1,...,a_count]" truncated at termination.
  std::string to_string(std::size_t count) const;

  struct State;

 private:
  std::shared_ptr<State> state_;
};

CFExpansion expand(const RealDescriptor& x, std::size_t count);

// Convergents with indices 0..upto.
std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t upto);

struct ErrorTerm {
  std::size_t index = 0;
  bool exact = false;
  QuadraticNumber value;   // delta_n when exact
  IntervalValue enclosure; // always set
  double approx() const { return to_double(enclosure.midpoint()); }
};

// delta_n with x = p_n/q_n + delta_n/q_n^2.
ErrorTerm error_term(const RealDescriptor& x, std::size_t n);

// Signed estimate of delta_n from the digits a_{n-l}..a_{n+l}.
Rational delta_estimate(std::span<const BigInt> window, unsigned n_parity, std::size_t l);

// [a0; a1, ..., ak] as a rational.
Rational finite_cf(std::span<const BigInt> digits);

bool legendre_check(const BigInt& p, const BigInt& q, const RealDescriptor& x);
bool is_best_approx(const BigInt& p, const BigInt& q, const RealDescriptor& x);

// Least q >= 1 with ||q x|| <= delta (found among convergent denominators).
BigInt least_denominator(const RealDescriptor& x, const Rational& delta, std::size_t max_index = 4096);

Rational pattern_density(const CFExpansion& cf, std::span<const BigInt> pattern, std::size_t N);

// CSV with columns n,a_n,p_n,q_n,delta_n_lo,delta_n_hi for n = 0..upto.
void write_convergent_csv(std::ostream& out, const RealDescriptor& x, std::size_t upto);

}  // namespace recbases

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recbases/bitset.hpp"
#include "recbases/linear_form.hpp"
#include "recbases/real.hpp"

namespace recbases {

struct PolyTerm {
  unsigned degree = 0;
  RealDescriptor coeff;
};
using Polynomial = std::vector<PolyTerm>;

// p(n) as a linear form in the coefficients.
LinearForm evaluate(const Polynomial& poly, const BigInt& n);
// "2=surd:sqrt(2)|0=rat:1/3"
Polynomial parse_polynomial(std::string_view text);
std::string serialize_polynomial(const Polynomial& poly);
Polynomial monomial(const RealDescriptor& alpha, unsigned degree);

class EpsilonSchedule {
 public:
  enum class Kind { Constant, InverseLog, InversePower, Table };

  static EpsilonSchedule constant(const Rational& eps0);
  // max(floor, min(1/2, c / ln n)), and 1/2 for n <= 1
  static EpsilonSchedule inverse_log(const Rational& c, const Rational& floor = 0);
  // min(1/2, n^-delta), and 1/2 at n = 0
  static EpsilonSchedule inverse_power(const Rational& delta);
  // step function through (n_i, eps_i); first value before n_1, last value extended
  static EpsilonSchedule table(std::vector<std::pair<std::uint64_t, Rational>> steps);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  const Rational& constant_value() const { return a_; }

  Threshold at(std::uint64_t n) const;
  // Checks 0 < eps <= 1/2 and non-increase for 2 <= n <= upto (tables and
  // constants exactly; the analytic kinds are monotone by construction).
  void validate() const;

  // const:0.1 | invlog:c[,floor] | invpow:delta | table:n1=e1;n2=e2
  std::string serialize() const;
  static EpsilonSchedule parse(std::string_view text);

 private:
  Kind kind_ = Kind::Constant;
  Rational a_{1, 10};
  Rational b_{0};
  std::vector<std::pair<std::uint64_t, Rational>> steps_;
};

struct RecurrenceSetSpec {
  Polynomial poly;
  EpsilonSchedule schedule;

  std::string to_json() const;  // {"poly": "...", "eps": "..."}
};

bool contains(const RecurrenceSetSpec& spec, std::uint64_t n);

struct EnumerateOptions {
  unsigned threads = 1;
  std::size_t chunk = 1 << 14;  // multiple of 64
};

// Membership bitset over [0, T].
Bitset enumerate(const RecurrenceSetSpec& spec, std::uint64_t T, const EnumerateOptions& opts = {});
// |A ∩ {1..T}| / T
Rational density(const RecurrenceSetSpec& spec, std::uint64_t T);
Rational density(const Bitset& members);

}  // namespace recbases

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "recbases/real.hpp"

namespace recbases {

enum class Comparison { Below, Equal, Above };
const char* to_string(Comparison c);

// A threshold theta: exact (rational or quadratic) or given by enclosures.
class Threshold {
 public:
  Threshold() = default;
  Threshold(const Rational& r) : exact_(QuadraticNumber(r)) {}  // NOLINT(google-explicit-constructor)
  static Threshold exact(const QuadraticNumber& x);
  // enclose(bits) must return an interval of width <= 2^-bits containing theta
  static Threshold enclosed(std::function<IntervalValue(unsigned)> enclose);

  const std::optional<QuadraticNumber>& exact_value() const { return exact_; }
  IntervalValue enclose(unsigned bits) const;
  double approx() const;

 private:
  std::optional<QuadraticNumber> exact_;
  std::function<IntervalValue(unsigned)> enclose_;
};

// sum_j c_j * x_j + constant, with integer c_j.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(const BigInt& coeff, const RealDescriptor& x) { add(coeff, x); }

  LinearForm& add(const BigInt& coeff, const RealDescriptor& x);
  LinearForm& add_constant(const Rational& c);

  const std::vector<std::pair<BigInt, RealDescriptor>>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }

  bool all_exact() const;
  // Value in a single quadratic field, if every term is exact and at most one
  // field occurs.
  std::optional<QuadraticNumber> exact_value() const;
  // For all-exact forms: the rational part and the coefficient of each sqrt(d).
  // Integrality is exact: since the sqrt(d) are linearly independent over Q,
  // the value is an integer iff all surd coefficients vanish and the rational
  // part is integral.
  bool exact_is_integer() const;
  bool exact_is_rational() const;

  // Enclosure of width <= 2^-bits. Throws PrecisionExhausted if a term
  // cannot supply enough bits.
  IntervalValue enclose(unsigned bits) const;
  // Most precision every term can deliver for a requested output width.
  unsigned max_bits() const;

 private:
  struct Split {
    Rational rational;
    std::vector<std::pair<BigInt, Rational>> surds;  // (d, coefficient), nonzero, sorted by d
  };
  Split split() const;

  std::vector<std::pair<BigInt, RealDescriptor>> terms_;
  Rational constant_{0};
};

struct FractionalDistance {
  bool exact = false;
  QuadraticNumber value;   // ||form|| when exact
  BigInt nearest;          // nearest integer when exact
  IntervalValue enclosure; // always set
};

FractionalDistance fractional_distance(const RealDescriptor& x, const BigInt& m, unsigned bits = 64);
FractionalDistance fractional_distance(const LinearForm& form, unsigned bits = 64);

// ||form|| vs theta. Exact for single-field forms against exact thresholds,
// otherwise refines until the sides separate. Undecidable when the precision
// cap (or a decimal literal's stated precision) is hit first.
Comparison compare_distance(const LinearForm& form, const Threshold& theta);
// |form| vs theta (absolute value, not distance to the nearest integer).
Comparison compare_abs(const LinearForm& form, const Threshold& theta);
Comparison cmp_threshold(const RealDescriptor& x, const BigInt& m, const Rational& theta);

}  // namespace recbases

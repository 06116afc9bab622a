#pragma once

#include <string>

#include "recbases/bigint.hpp"

namespace recbases {

// Closed interval [lo, hi]. Values handed out by the realkernel have dyadic
// endpoints; arithmetic here keeps them dyadic as long as the operands are.
class IntervalValue {
 public:
  IntervalValue() = default;
  explicit IntervalValue(const Rational& point) : lo_(point), hi_(point) {}
  IntervalValue(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const IntervalValue& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool disjoint(const IntervalValue& other) const { return hi_ < other.lo_ || other.hi_ < lo_; }
  bool is_dyadic() const;

  // Round outward onto the grid 2^-bits.
  IntervalValue rounded_outward(unsigned bits) const;

  // Image of x -> ||x|| (distance to nearest integer).
  IntervalValue nearest_integer_distance() const;
  IntervalValue abs() const;

  friend IntervalValue operator+(const IntervalValue& a, const IntervalValue& b) {
    return IntervalValue(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend IntervalValue operator-(const IntervalValue& a, const IntervalValue& b) {
    return IntervalValue(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend IntervalValue operator+(const IntervalValue& a, const Rational& r) { return IntervalValue(a.lo_ + r, a.hi_ + r); }
  friend IntervalValue operator-(const IntervalValue& a, const Rational& r) { return IntervalValue(a.lo_ - r, a.hi_ - r); }
  IntervalValue operator-() const { return IntervalValue(-hi_, -lo_); }
  IntervalValue scaled(const Rational& s) const;
  friend IntervalValue operator*(const IntervalValue& a, const IntervalValue& b);

  bool operator==(const IntervalValue& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

  std::string to_string() const;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

}  // namespace recbases

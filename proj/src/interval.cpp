#include "recbases/interval.hpp"

#include <algorithm>

#include "recbases/errors.hpp"

namespace recbases {

IntervalValue::IntervalValue(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  if (hi_ < lo_) throw InvalidArgument("realkernel", "interval with lo > hi");
}

bool IntervalValue::is_dyadic() const {
  auto pow2_den = [](const Rational& r) { return mpz_popcount(r.get_den_mpz_t()) == 1; };
  return pow2_den(lo_) && pow2_den(hi_);
}

IntervalValue IntervalValue::rounded_outward(unsigned bits) const {
  return IntervalValue(dyadic_floor(lo_, bits), dyadic_ceil(hi_, bits));
}

IntervalValue IntervalValue::scaled(const Rational& s) const {
  if (s >= 0) return IntervalValue(lo_ * s, hi_ * s);
  return IntervalValue(hi_ * s, lo_ * s);
}

IntervalValue operator*(const IntervalValue& a, const IntervalValue& b) {
  Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return IntervalValue(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

IntervalValue IntervalValue::abs() const {
  if (lo_ >= 0) return *this;
  if (hi_ <= 0) return -*this;
  return IntervalValue(0, std::max(Rational(-lo_), hi_));
}

namespace {
Rational dist_to_int(const Rational& x) {
  Rational r = x - Rational(round_q(x));
  return r < 0 ? Rational(-r) : r;
}
}  // namespace

IntervalValue IntervalValue::nearest_integer_distance() const {
  if (width() >= 1) return IntervalValue(0, Rational(1, 2));
  const Rational half(1, 2);
  bool has_int = Rational(ceil_q(lo_)) <= hi_;
  bool has_half = Rational(ceil_q(lo_ - half)) <= hi_ - half;
  Rational flo = dist_to_int(lo_);
  Rational fhi = dist_to_int(hi_);
  Rational mn = has_int ? Rational(0) : std::min(flo, fhi);
  Rational mx = has_half ? half : std::max(flo, fhi);
  return IntervalValue(mn, mx);
}

std::string IntervalValue::to_string() const {
  return "[" + recbases::to_string(lo_) + ", " + recbases::to_string(hi_) + "]";
}

}  // namespace recbases

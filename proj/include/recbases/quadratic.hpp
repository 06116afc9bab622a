#pragma once

#include <string>

#include "recbases/bigint.hpp"
#include "recbases/interval.hpp"

namespace recbases {

// Exact element (a + b*sqrt(d))/c of Q(sqrt(d)).
//
// Normal form: c > 0, gcd(a, b, c) = 1, d squarefree >= 2 whenever b != 0.
// Rationals carry b = 0 and d = 0 so they mix with any field.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& r);  // NOLINT(google-explicit-constructor)
  QuadraticNumber(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d);

  static QuadraticNumber sqrt(const BigInt& n);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  Rational rational_part() const { return make_rational(a_, c_); }
  Rational surd_part() const { return make_rational(b_, c_); }
  Rational to_rational() const;  // throws unless rational

  int sign() const;
  BigInt floor() const;
  BigInt nearest_integer() const;  // ties go up
  QuadraticNumber conjugate() const { return QuadraticNumber(a_, -b_, c_, d_); }
  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  // Field norm (a^2 - b^2 d)/c^2.
  Rational norm() const;

  // ||x|| exactly, and the integer nearest to x.
  QuadraticNumber fractional_distance(BigInt* nearest = nullptr) const;

  // Dyadic enclosure of width <= 2^-bits from floor(x * 2^bits).
  IntervalValue enclose(unsigned bits) const;

  QuadraticNumber operator-() const { return QuadraticNumber(-a_, -b_, c_, d_); }
  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);

  QuadraticNumber& operator+=(const QuadraticNumber& y) { return *this = *this + y; }
  QuadraticNumber& operator-=(const QuadraticNumber& y) { return *this = *this - y; }
  QuadraticNumber& operator*=(const QuadraticNumber& y) { return *this = *this * y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend int compare(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign(); }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return compare(x, y) < 0; }

  double to_double() const;
  // "(a+b*sqrt(d))/c", or a plain rational
  std::string to_string() const;

 private:
  void normalize();

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
  BigInt d_{0};
};

bool same_field(const QuadraticNumber& x, const QuadraticNumber& y);

}  // namespace recbases

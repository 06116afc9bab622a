#include "recbases/quadratic.hpp"

#include "recbases/errors.hpp"

namespace recbases {

QuadraticNumber::QuadraticNumber(const Rational& r) : a_(r.get_num()), b_(0), c_(r.get_den()), d_(0) {}

QuadraticNumber::QuadraticNumber(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (c_ == 0) throw InvalidArgument("realkernel", "surd with zero denominator");
  if (b_ != 0 && d_ <= 0) throw InvalidArgument("realkernel", "surd needs d > 0");
  normalize();
}

QuadraticNumber QuadraticNumber::sqrt(const BigInt& n) {
  if (n < 0) throw InvalidArgument("realkernel", "sqrt of negative");
  if (n == 0) return QuadraticNumber();
  return QuadraticNumber(0, 1, 1, n);
}

void QuadraticNumber::normalize() {
  if (b_ != 0) {
    BigInt s, r;
    squarefree_split(d_, s, r);
    b_ *= s;
    d_ = r;
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
  }
  if (b_ == 0) d_ = 0;
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

Rational QuadraticNumber::to_rational() const {
  if (!is_rational()) throw InvalidArgument("realkernel", "value is irrational: " + to_string());
  return make_rational(a_, c_);
}

bool same_field(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x.is_rational() || y.is_rational() || x.d() == y.d();
}

namespace {
const BigInt& common_d(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (!same_field(x, y)) {
    throw InvalidArgument("realkernel", "mixing Q(sqrt(" + to_string(x.d()) + ")) and Q(sqrt(" + to_string(y.d()) + "))");
  }
  return x.is_rational() ? y.d() : x.d();
}

// sign of X + Y sqrt(d) with d a non-square
int sign_xy(const BigInt& X, const BigInt& Y, const BigInt& d) {
  int sx = sgn(X), sy = sgn(Y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  BigInt lhs = X * X;
  BigInt rhs = Y * Y * d;
  return lhs > rhs ? sx : sy;
}
}  // namespace

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  const BigInt& d = common_d(x, y);
  return QuadraticNumber(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, d);
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const BigInt& d = common_d(x, y);
  return QuadraticNumber(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, d);
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (y.a_ == 0 && y.b_ == 0) throw InvalidArgument("realkernel", "division by zero");
  const BigInt& d = common_d(x, y);
  // 1/y = c (a - b sqrt d) / (a^2 - b^2 d)
  BigInt n = y.a_ * y.a_ - y.b_ * y.b_ * d;
  QuadraticNumber inv(y.c_ * y.a_, -y.c_ * y.b_, n, d);
  return x * inv;
}

int QuadraticNumber::sign() const {
  if (b_ == 0) return sgn(a_);
  return sign_xy(a_, b_, d_);
}

Rational QuadraticNumber::norm() const { return make_rational(a_ * a_ - b_ * b_ * d_, c_ * c_); }

BigInt QuadraticNumber::floor() const {
  BigInt s = 0;
  if (b_ != 0) {
    BigInt r = isqrt(b_ * b_ * d_);
    s = b_ > 0 ? r : BigInt(-r - 1);
  }
  return floor_div(a_ + s, c_);
}

BigInt QuadraticNumber::nearest_integer() const { return (*this + QuadraticNumber(Rational(1, 2))).floor(); }

QuadraticNumber QuadraticNumber::fractional_distance(BigInt* nearest) const {
  BigInt n = nearest_integer();
  if (nearest) *nearest = n;
  return (*this - QuadraticNumber(Rational(n))).abs();
}

IntervalValue QuadraticNumber::enclose(unsigned bits) const {
  QuadraticNumber scaled = *this * QuadraticNumber(pow2(bits));
  BigInt f = scaled.floor();
  Rational lo = Rational(f) * pow2(-static_cast<long>(bits));
  if (scaled.is_rational() && scaled.a_ == f * scaled.c_) return IntervalValue(lo);
  return IntervalValue(lo, Rational(f + 1) * pow2(-static_cast<long>(bits)));
}

double QuadraticNumber::to_double() const {
  if (b_ == 0) return recbases::to_double(make_rational(a_, c_));
  return recbases::to_double(enclose(80).midpoint());
}

std::string QuadraticNumber::to_string() const {
  if (b_ == 0) return recbases::to_string(make_rational(a_, c_));
  std::string s = "(" + recbases::to_string(a_) + (b_ < 0 ? "-" : "+") + recbases::to_string(abs_big(b_)) + "*sqrt(" +
                  recbases::to_string(d_) + "))/" + recbases::to_string(c_);
  return s;
}

}  // namespace recbases

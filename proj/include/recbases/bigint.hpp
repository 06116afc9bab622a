#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace recbases {

using BigInt = mpz_class;
using Rational = mpq_class;

// floor(a / b) for b != 0
BigInt floor_div(const BigInt& a, const BigInt& b);
// floor(sqrt(n)), n >= 0
BigInt isqrt(const BigInt& n);
// largest e with p^e | n; n != 0
unsigned valuation(const BigInt& n, unsigned long p);
inline unsigned valuation2(const BigInt& n) { return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0)); }

// floor and ceil of a rational
BigInt floor_q(const Rational& q);
BigInt ceil_q(const Rational& q);
// nearest integer, ties rounded up
BigInt round_q(const Rational& q);

Rational make_rational(const BigInt& num, const BigInt& den);
// 2^e as a rational, e may be negative
Rational pow2(long e);
BigInt ipow(const BigInt& base, unsigned long e);
BigInt abs_big(const BigInt& x);
int sign(const BigInt& x);
int sign(const Rational& x);
unsigned long bit_length(const BigInt& x);  // of |x|; 0 for 0

// "p/q" or "p"; also accepts decimals like "0.125" and "-1.5"
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

// Round a rational down or up onto the grid 2^-bits.
Rational dyadic_floor(const Rational& x, unsigned bits);
Rational dyadic_ceil(const Rational& x, unsigned bits);

// Nearby double; outward variants step one ulp further so the double bounds
// the rational on the requested side.
double to_double(const Rational& x);
double to_double_down(const Rational& x);
double to_double_up(const Rational& x);

bool is_squarefree(const BigInt& d);
// n = s^2 * r with r squarefree; trial division, fine for the small d used here
void squarefree_split(const BigInt& n, BigInt& square_root_part, BigInt& squarefree_part);

}  // namespace recbases

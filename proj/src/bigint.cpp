#include "recbases/bigint.hpp"

#include <cmath>
#include <limits>

#include "recbases/errors.hpp"

namespace recbases {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw InvalidArgument("bigint", "division by zero");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidArgument("bigint", "isqrt of negative");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

unsigned valuation(const BigInt& n, unsigned long p) {
  if (n == 0) throw InvalidArgument("bigint", "valuation of zero");
  if (p == 2) return valuation2(n);
  BigInt m = n;
  BigInt pp = p;
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
    ++e;
  }
  return e;
}

BigInt floor_q(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_q(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt round_q(const Rational& q) { return floor_q(q + Rational(1, 2)); }

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("bigint", "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
int sign(const BigInt& x) { return sgn(x); }
int sign(const Rational& x) { return sgn(x); }

unsigned long bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("bigint", "empty integer literal");
  if (s[0] == '+') s.erase(0, 1);
  BigInt r;
  if (r.set_str(s, 10) != 0) throw InvalidArgument("bigint", "bad integer literal '" + std::string(text) + "'");
  return r;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return make_rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_bigint(text));
  std::string_view ip = text.substr(0, dot);
  std::string_view fp = text.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
  std::string digits = std::string(ip.empty() ? "0" : ip) + std::string(fp);
  for (char c : digits) {
    if (c < '0' || c > '9') throw InvalidArgument("bigint", "bad decimal literal '" + std::string(text) + "'");
  }
  Rational r = make_rational(parse_bigint(digits), ipow(10, fp.size()));
  return neg ? Rational(-r) : r;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str(10);
  return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Rational dyadic_floor(const Rational& x, unsigned bits) {
  Rational scaled = x * pow2(bits);
  return Rational(floor_q(scaled)) * pow2(-static_cast<long>(bits));
}

Rational dyadic_ceil(const Rational& x, unsigned bits) {
  Rational scaled = x * pow2(bits);
  return Rational(ceil_q(scaled)) * pow2(-static_cast<long>(bits));
}

double to_double(const Rational& x) { return mpq_get_d(x.get_mpq_t()); }

double to_double_down(const Rational& x) {
  double d = to_double(x);
  if (Rational(d) > x) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double to_double_up(const Rational& x) {
  double d = to_double(x);
  if (Rational(d) < x) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

void squarefree_split(const BigInt& n, BigInt& square_root_part, BigInt& squarefree_part) {
  if (n <= 0) throw InvalidArgument("bigint", "squarefree_split needs n > 0");
  if (bit_length(n) > 80) throw InvalidArgument("bigint", "radicand too large to factor by trial division");
  BigInt m = n;
  square_root_part = 1;
  squarefree_part = 1;
  for (BigInt p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e == 0) continue;
    square_root_part *= ipow(p, e / 2);
    if (e % 2) squarefree_part *= p;
  }
  squarefree_part *= m;
}

bool is_squarefree(const BigInt& d) {
  BigInt s, r;
  squarefree_split(d, s, r);
  return s == 1;
}

}  // namespace recbases

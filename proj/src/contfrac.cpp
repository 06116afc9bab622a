#include "recbases/contfrac.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "recbases/errors.hpp"

namespace recbases {

namespace {
std::vector<BigInt> euclid_digits(const Rational& r) {
  std::vector<BigInt> out;
  BigInt num = r.get_num(), den = r.get_den();
  while (den != 0) {
    BigInt a = floor_div(num, den);
    out.push_back(a);
    BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  return out;
}
}  // namespace

struct CFExpansion::State {
  enum class Engine { Finite, Surd, Stream, Interval };

  RealDescriptor source;
  Engine engine = Engine::Finite;
  mutable std::mutex mu;
  std::vector<BigInt> digits;  // digits[0] = a0
  bool finished = false;       // finite expansion fully known

  // surd engine: x_n = (P + sqrt(D)) / Q
  BigInt P, Q, D, rootD;
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::optional<Periodicity> period;

  // interval engine
  unsigned bits = 0;

  void init() {
    if (source.is_rational()) {
      engine = Engine::Finite;
      digits = euclid_digits(source.as_rational());
      finished = true;
    } else if (source.kind() == RealDescriptor::Kind::QuadraticSurd) {
      engine = Engine::Surd;
      QuadraticNumber x = *source.exact();
      const BigInt &a = x.a(), &b = x.b(), &c = x.c();
      D = b * b * x.d() * c * c;
      if (b > 0) {
        P = a * c;
        Q = c * c;
      } else {
        P = -a * c;
        Q = -c * c;
      }
      rootD = isqrt(D);
      surd_step();
    } else if (source.kind() == RealDescriptor::Kind::CFStream) {
      engine = Engine::Stream;
      digits.push_back(source.cf_digit(0));
    } else {
      engine = Engine::Interval;
      bits = 32;
      interval_refine(1);
    }
  }

  // Emit the digit of the current state and advance.
  void surd_step() {
    if (!period) {
      auto key = std::make_pair(P, Q);
      auto it = seen.find(key);
      if (it != seen.end()) {
        period = Periodicity{it->second, digits.size() - it->second};
      } else {
        seen.emplace(key, digits.size());
      }
    }
    if (period) {
      digits.push_back(digits[digits.size() - period->period]);
      return;
    }
    BigInt a;
    if (Q > 0) {
      a = floor_div(P + rootD, Q);
    } else {
      a = -(floor_div(P + rootD, -Q) + 1);
    }
    digits.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }

  void interval_refine(std::size_t want) {
    // want = number of digits including a0
    unsigned cap = source.max_bits();
    for (;;) {
      unsigned b = std::min(bits, cap);
      IntervalValue iv = source.to_interval(b);
      std::vector<BigInt> lo = euclid_digits(iv.lo());
      std::vector<BigInt> hi = euclid_digits(iv.hi());
      std::size_t n = std::min(lo.size(), hi.size());
      n = n == 0 ? 0 : n - 1;
      std::size_t k = 0;
      while (k < n && lo[k] == hi[k]) ++k;
      if (k > digits.size()) digits.assign(lo.begin(), lo.begin() + static_cast<long>(k));
      if (digits.size() >= want) return;
      if (b >= cap) {
        throw PrecisionExhausted("contfrac", "cannot certify " + std::to_string(want - 1) + " digits of " +
                                                 source.serialize(), b);
      }
      bits = bits > UINT_MAX / 2 ? UINT_MAX : bits * 2;
    }
  }

  // Ensure digits.size() > i if possible.
  bool ensure(std::size_t i) {
    while (digits.size() <= i) {
      switch (engine) {
        case Engine::Finite:
          return false;
        case Engine::Surd:
          surd_step();
          break;
        case Engine::Stream:
          digits.push_back(source.cf_digit(digits.size()));
          break;
        case Engine::Interval:
          interval_refine(std::max<std::size_t>(i + 1, digits.size() + digits.size() / 2 + 1));
          break;
      }
    }
    return true;
  }
};

CFExpansion::CFExpansion(const RealDescriptor& x) : state_(std::make_shared<State>()) {
  state_->source = x;
  state_->init();
}

const RealDescriptor& CFExpansion::source() const { return state_->source; }

BigInt CFExpansion::a0() const { return digit(0); }

BigInt CFExpansion::digit(std::size_t i) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->ensure(i)) throw RationalTerminated("contfrac", state_->digits.size() - 1);
  return state_->digits[i];
}

std::vector<BigInt> CFExpansion::digits(std::size_t count) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->ensure(count);
  std::size_t n = std::min(count + 1, state_->digits.size());
  return std::vector<BigInt>(state_->digits.begin() + 1, state_->digits.begin() + static_cast<long>(n));
}

std::size_t CFExpansion::available() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->digits.size() - 1;
}

bool CFExpansion::terminated() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->finished;
}

bool CFExpansion::extend(std::size_t count) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->ensure(count);
}

std::optional<Periodicity> CFExpansion::periodicity() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (state_->engine != State::Engine::Surd) return std::nullopt;
  // period is found once a state repeats; the state space is finite
  while (!state_->period) state_->surd_step();
  return state_->period;
}

std::string CFExpansion::to_string(std::size_t count) const {
  std::vector<BigInt> d = digits(count);
  std::string s = "[" + recbases::to_string(a0()) + ";";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += recbases::to_string(d[i]);
  }
  return s + "]";
}

CFExpansion expand(const RealDescriptor& x, std::size_t count) {
  CFExpansion cf(x);
  cf.extend(count);
  return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t upto) {
  std::vector<Convergent> out;
  BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  for (std::size_t n = 0; n <= upto; ++n) {
    BigInt a = cf.digit(n);
    BigInt p = a * pm1 + pm2;
    BigInt q = a * qm1 + qm2;
    out.push_back({static_cast<long>(n), p, q});
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
  }
  return out;
}

ErrorTerm error_term(const RealDescriptor& x, std::size_t n) {
  CFExpansion cf(x);
  Convergent c = convergents(cf, n).back();
  ErrorTerm e;
  e.index = n;
  if (auto v = x.exact()) {
    e.exact = true;
    e.value = QuadraticNumber(Rational(c.q * c.q)) * *v - QuadraticNumber(Rational(c.p * c.q));
    e.enclosure = e.value.enclose(64);
    return e;
  }
  unsigned want = static_cast<unsigned>(2 * bit_length(c.q) + 64);
  unsigned cap = x.max_bits();
  if (cap < 2 * bit_length(c.q) + 8) {
    throw PrecisionExhausted("contfrac", "delta_" + std::to_string(n) + " needs more bits than stated", cap);
  }
  IntervalValue iv = x.to_interval(std::min(want, cap));
  e.enclosure = iv.scaled(Rational(c.q * c.q)) - Rational(c.p * c.q);
  return e;
}

Rational finite_cf(std::span<const BigInt> digits) {
  if (digits.empty()) throw InvalidArgument("contfrac", "empty continued fraction");
  Rational v(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) v = Rational(digits[i]) + 1 / v;
  return v;
}

Rational delta_estimate(std::span<const BigInt> window, unsigned n_parity, std::size_t l) {
  if (l < 1) throw InvalidArgument("contfrac", "delta_estimate needs l >= 1");
  if (window.size() != 2 * l + 1) throw InvalidArgument("contfrac", "window must hold 2l+1 digits");
  const BigInt& an = window[l];
  Rational rho = finite_cf(window.subspan(l));
  std::vector<BigInt> back(window.begin(), window.begin() + static_cast<long>(l));
  std::reverse(back.begin(), back.end());
  Rational lambda = 1 / finite_cf(back);
  Rational mag = (rho - Rational(an)) * (Rational(an) + lambda) / (rho + lambda);
  return (n_parity & 1) ? Rational(-mag) : mag;
}

bool legendre_check(const BigInt& p, const BigInt& q, const RealDescriptor& x) {
  if (q < 1) throw InvalidArgument("contfrac", "legendre_check needs q >= 1");
  LinearForm f(q, x);
  f.add_constant(Rational(-p));
  return compare_abs(f, Threshold(make_rational(1, 2 * q))) == Comparison::Below;
}

bool is_best_approx(const BigInt& p, const BigInt& q, const RealDescriptor& x) {
  if (q < 1) throw InvalidArgument("contfrac", "is_best_approx needs q >= 1");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw InvalidArgument("contfrac", "is_best_approx needs gcd(p, q) = 1");
  if (q == 1) {
    // the nearest integer wins among denominators 1
    LinearForm f(1, x);
    f.add_constant(Rational(-p));
    return compare_abs(f, Threshold(Rational(1, 2))) == Comparison::Below;
  }
  CFExpansion cf(x);
  BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  for (std::size_t n = 0;; ++n) {
    BigInt a;
    try {
      a = cf.digit(n);
    } catch (const RationalTerminated&) {
      return false;
    }
    BigInt pn = a * pm1 + pm2;
    BigInt qn = a * qm1 + qm2;
    if (n >= 1 && qn == q) return pn == p;
    if (qn > q) return false;
    pm2 = pm1;
    qm2 = qm1;
    pm1 = pn;
    qm1 = qn;
  }
}

BigInt least_denominator(const RealDescriptor& x, const Rational& delta, std::size_t max_index) {
  if (delta <= 0) throw InvalidArgument("contfrac", "least_denominator needs delta > 0");
  CFExpansion cf(x);
  BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  for (std::size_t n = 0; n <= max_index; ++n) {
    BigInt a;
    try {
      a = cf.digit(n);
    } catch (const RationalTerminated&) {
      return qm1;  // x = p/q exactly, ||q x|| = 0
    }
    BigInt qn = a * qm1 + qm2;
    BigInt pn = a * pm1 + pm2;
    if (compare_distance(LinearForm(qn, x), Threshold(delta)) != Comparison::Above) {
      return qn;
    }
    pm2 = pm1;
    qm2 = qm1;
    pm1 = pn;
    qm1 = qn;
  }
  throw PrecisionExhausted("contfrac", "no convergent denominator reaches the requested delta", 0);
}

Rational pattern_density(const CFExpansion& cf, std::span<const BigInt> pattern, std::size_t N) {
  if (N == 0) throw InvalidArgument("contfrac", "pattern_density needs N >= 1");
  if (pattern.empty()) return Rational(1);
  std::size_t hits = 0;
  for (std::size_t j = 1; j <= N; ++j) {
    bool ok = true;
    for (std::size_t t = 0; t < pattern.size() && ok; ++t) ok = cf.digit(j + t) == pattern[t];
    if (ok) ++hits;
  }
  return make_rational(hits, N);
}

void write_convergent_csv(std::ostream& out, const RealDescriptor& x, std::size_t upto) {
  CFExpansion cf(x);
  std::vector<Convergent> cs = convergents(cf, upto);
  out << "n,a_n,p_n,q_n,delta_n_lo,delta_n_hi\n";
  for (const auto& c : cs) {
    std::size_t n = static_cast<std::size_t>(c.index);
    ErrorTerm e = error_term(x, n);
    std::ostringstream lo, hi;
    lo << std::setprecision(17) << to_double_down(e.enclosure.lo());
    hi << std::setprecision(17) << to_double_up(e.enclosure.hi());
    out << n << "," << recbases::to_string(cf.digit(n)) << "," << recbases::to_string(c.p) << ","
        << recbases::to_string(c.q) << "," << lo.str() << "," << hi.str() << "\n";
  }
}

}  // namespace recbases

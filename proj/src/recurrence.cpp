#include "recbases/recurrence.hpp"

#include <mpfr.h>

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "recbases/errors.hpp"

namespace recbases {

LinearForm evaluate(const Polynomial& poly, const BigInt& n) {
  LinearForm f;
  for (const auto& t : poly) f.add(ipow(n, t.degree), t.coeff);
  return f;
}

Polynomial monomial(const RealDescriptor& alpha, unsigned degree) { return {PolyTerm{degree, alpha}}; }

Polynomial parse_polynomial(std::string_view text) {
  Polynomial out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    if (bar == std::string_view::npos) bar = text.size();
    std::string_view term = text.substr(pos, bar - pos);
    std::size_t eq = term.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("recurrence", "polynomial term must read degree=coefficient");
    unsigned long deg = parse_bigint(term.substr(0, eq)).get_ui();
    for (const auto& t : out)
      if (t.degree == deg) throw InvalidArgument("recurrence", "repeated degree " + std::to_string(deg));
    out.push_back(PolyTerm{static_cast<unsigned>(deg), RealDescriptor::parse(term.substr(eq + 1))});
    pos = bar + 1;
  }
  if (out.empty()) throw InvalidArgument("recurrence", "empty polynomial");
  return out;
}

std::string serialize_polynomial(const Polynomial& poly) {
  std::string s;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) s += "|";
    s += std::to_string(poly[i].degree) + "=" + poly[i].coeff.serialize();
  }
  return s;
}

// ---- MPFR enclosures -------------------------------------------------------

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Rational to_rational(const mpfr_t x) {
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Rational(m) * pow2(e);
}

// Bounds on ln n (n >= 2).
std::pair<Rational, Rational> log_bounds(std::uint64_t n, mpfr_prec_t prec) {
  Mpfr x(64), lo(prec), hi(prec);
  mpfr_set_ui(x.v, n, MPFR_RNDN);  // exact for 64-bit n at 64-bit precision
  mpfr_log(lo.v, x.v, MPFR_RNDD);
  mpfr_log(hi.v, x.v, MPFR_RNDU);
  return {to_rational(lo.v), to_rational(hi.v)};
}

// Bounds on exp(q).
std::pair<Rational, Rational> exp_bounds(const Rational& q, mpfr_prec_t prec) {
  Mpfr xl(prec), xh(prec), lo(prec), hi(prec);
  mpfr_set_q(xl.v, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(xh.v, q.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(lo.v, xl.v, MPFR_RNDD);
  mpfr_exp(hi.v, xh.v, MPFR_RNDU);
  return {to_rational(lo.v), to_rational(hi.v)};
}

// Bounds on y^(1/k).
std::pair<Rational, Rational> root_bounds(const BigInt& y, unsigned long k, mpfr_prec_t prec) {
  Mpfr x(std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(bit_length(y) + 1))), lo(prec), hi(prec);
  mpfr_set_z(x.v, y.get_mpz_t(), MPFR_RNDN);  // exact: precision covers all bits
  mpfr_rootn_ui(lo.v, x.v, k, MPFR_RNDD);
  mpfr_rootn_ui(hi.v, x.v, k, MPFR_RNDU);
  return {to_rational(lo.v), to_rational(hi.v)};
}

// Is integer n < exp(q)? Never equal since exp of a nonzero rational is
// transcendental (q = 0 handled by the caller).
bool less_than_exp(std::uint64_t n, const Rational& q) {
  for (mpfr_prec_t prec = 96;; prec *= 2) {
    auto [lo, hi] = exp_bounds(q, prec);
    if (Rational(n) < lo) return true;
    if (Rational(n) > hi) return false;
    if (prec > (1 << 20)) throw Undecidable("recurrence", "cannot compare n with exp(q)", static_cast<unsigned>(prec));
  }
}

IntervalValue inv_log_enclosure(const Rational& c, std::uint64_t n, unsigned bits) {
  Rational target = pow2(-static_cast<long>(bits) - 1);
  for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 16 + static_cast<mpfr_prec_t>(bit_length(ceil_q(c)));;
       prec += 64) {
    auto [llo, lhi] = log_bounds(n, prec);
    IntervalValue iv(c / lhi, c / llo);
    if (iv.width() <= target) return iv.rounded_outward(bits + 2);
  }
}

IntervalValue inv_root_enclosure(const BigInt& np, unsigned long q, unsigned bits) {
  Rational target = pow2(-static_cast<long>(bits) - 1);
  for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 16;; prec += 64) {
    auto [rlo, rhi] = root_bounds(np, q, prec);
    IntervalValue iv(1 / rhi, 1 / rlo);
    if (iv.width() <= target) return iv.rounded_outward(bits + 2);
  }
}

}  // namespace

// ---- schedules --------------------------------------------------------------

EpsilonSchedule EpsilonSchedule::constant(const Rational& eps0) {
  EpsilonSchedule s;
  s.kind_ = Kind::Constant;
  s.a_ = eps0;
  s.validate();
  return s;
}

EpsilonSchedule EpsilonSchedule::inverse_log(const Rational& c, const Rational& floor) {
  EpsilonSchedule s;
  s.kind_ = Kind::InverseLog;
  s.a_ = c;
  s.b_ = floor;
  s.validate();
  return s;
}

EpsilonSchedule EpsilonSchedule::inverse_power(const Rational& delta) {
  EpsilonSchedule s;
  s.kind_ = Kind::InversePower;
  s.a_ = delta;
  s.validate();
  return s;
}

EpsilonSchedule EpsilonSchedule::table(std::vector<std::pair<std::uint64_t, Rational>> steps) {
  EpsilonSchedule s;
  s.kind_ = Kind::Table;
  std::sort(steps.begin(), steps.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  s.steps_ = std::move(steps);
  s.validate();
  return s;
}

void EpsilonSchedule::validate() const {
  const Rational half(1, 2);
  auto in_range = [&](const Rational& e) { return e > 0 && e <= half; };
  switch (kind_) {
    case Kind::Constant:
      if (!in_range(a_)) throw InvalidArgument("recurrence", "constant epsilon must lie in (0, 1/2]");
      break;
    case Kind::InverseLog:
      if (a_ <= 0) throw InvalidArgument("recurrence", "inverse-log constant must be positive");
      if (b_ < 0 || b_ > half) throw InvalidArgument("recurrence", "inverse-log floor must lie in [0, 1/2]");
      break;
    case Kind::InversePower:
      if (a_ < 0) throw InvalidArgument("recurrence", "inverse-power exponent must be >= 0");
      break;
    case Kind::Table: {
      if (steps_.empty()) throw InvalidArgument("recurrence", "empty epsilon table");
      for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (!in_range(steps_[i].second)) throw InvalidArgument("recurrence", "table epsilon must lie in (0, 1/2]");
        if (i && steps_[i].first == steps_[i - 1].first) throw InvalidArgument("recurrence", "duplicate table index");
        // values at n >= 2 must not increase
        if (i && steps_[i].first > 2 && steps_[i].second > steps_[i - 1].second) {
          throw InvalidArgument("recurrence", "table epsilon increases at n=" + std::to_string(steps_[i].first));
        }
      }
      break;
    }
  }
}

Threshold EpsilonSchedule::at(std::uint64_t n) const {
  const Rational half(1, 2);
  switch (kind_) {
    case Kind::Constant:
      return Threshold(a_);
    case Kind::Table: {
      const Rational* v = &steps_.front().second;
      for (const auto& [k, e] : steps_) {
        if (k > n) break;
        v = &e;
      }
      return Threshold(*v);
    }
    case Kind::InverseLog: {
      if (n <= 1) return Threshold(half);
      // c/ln n >= 1/2  <=>  n <= exp(2c)
      if (!less_than_exp(n, 2 * a_)) {
        // c/ln n < 1/2; floor takes over when n >= exp(c/floor)
        if (b_ > 0 && !less_than_exp(n, a_ / b_)) return Threshold(b_);
        Rational c = a_;
        return Threshold::enclosed([c, n](unsigned bits) { return inv_log_enclosure(c, n, bits); });
      }
      return Threshold(half);
    }
    case Kind::InversePower: {
      if (n == 0 || a_ == 0) return Threshold(half);
      unsigned long p = a_.get_num().get_ui();
      unsigned long q = a_.get_den().get_ui();
      BigInt np = ipow(BigInt(n), p);
      // n^(-p/q) >= 1/2  <=>  n^p <= 2^q
      if (np <= ipow(2, q)) return Threshold(half);
      BigInt r;
      if (mpz_root(r.get_mpz_t(), np.get_mpz_t(), q) != 0) return Threshold(make_rational(1, r));
      if (q == 2) return Threshold::exact(QuadraticNumber(1) / QuadraticNumber::sqrt(np));
      return Threshold::enclosed([np, q](unsigned bits) { return inv_root_enclosure(np, q, bits); });
    }
  }
  throw InvalidArgument("recurrence", "unknown schedule kind");
}

std::string EpsilonSchedule::serialize() const {
  switch (kind_) {
    case Kind::Constant:
      return "const:" + to_string(a_);
    case Kind::InverseLog:
      return "invlog:" + to_string(a_) + (b_ != 0 ? "," + to_string(b_) : "");
    case Kind::InversePower:
      return "invpow:" + to_string(a_);
    case Kind::Table: {
      std::string s = "table:";
      for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i) s += ";";
        s += std::to_string(steps_[i].first) + "=" + to_string(steps_[i].second);
      }
      return s;
    }
  }
  return {};
}

EpsilonSchedule EpsilonSchedule::parse(std::string_view text) {
  auto starts = [&](std::string_view p) { return text.substr(0, p.size()) == p; };
  if (starts("const:")) return constant(parse_rational(text.substr(6)));
  if (starts("invlog:")) {
    std::string_view body = text.substr(7);
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) return inverse_log(parse_rational(body));
    return inverse_log(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
  }
  if (starts("invpow:")) return inverse_power(parse_rational(text.substr(7)));
  if (starts("table:")) {
    std::vector<std::pair<std::uint64_t, Rational>> steps;
    std::string_view body = text.substr(6);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t semi = body.find(';', pos);
      if (semi == std::string_view::npos) semi = body.size();
      std::string_view item = body.substr(pos, semi - pos);
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("recurrence", "table entries read n=eps");
      steps.emplace_back(parse_bigint(item.substr(0, eq)).get_ui(), parse_rational(item.substr(eq + 1)));
      pos = semi + 1;
    }
    return table(std::move(steps));
  }
  throw InvalidArgument("recurrence", "unknown epsilon schedule '" + std::string(text) + "'");
}

std::string RecurrenceSetSpec::to_json() const {
  return "{\"poly\":\"" + serialize_polynomial(poly) + "\",\"eps\":\"" + schedule.serialize() + "\"}";
}

// ---- membership -------------------------------------------------------------

namespace {

int sign_xy(const BigInt& X, const BigInt& Y, const BigInt& d) {
  int sx = sgn(X), sy = sgn(Y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  return X * X > Y * Y * d ? sx : sy;
}

// Membership test with an integer fast path for single-field exact
// polynomials: p(n) = (X + Y sqrt(d)) / C with X, Y integers.
class Tester {
 public:
  explicit Tester(const RecurrenceSetSpec& spec) : spec_(spec) {
    bool exact = true;
    std::optional<BigInt> field;
    for (const auto& t : spec.poly) {
      if (!t.coeff.is_exact()) {
        exact = false;
        break;
      }
      QuadraticNumber v = *t.coeff.exact();
      if (!v.is_rational()) {
        if (field && *field != v.d()) {
          exact = false;
          break;
        }
        field = v.d();
      }
    }
    if (!exact) return;
    fast_ = true;
    d_ = field ? *field : BigInt(0);
    C_ = 1;
    for (const auto& t : spec.poly) {
      const BigInt& c = t.coeff.exact()->c();
      C_ = C_ / gcd(C_, c) * c;
    }
    for (const auto& t : spec.poly) {
      QuadraticNumber v = *t.coeff.exact();
      BigInt scale = C_ / v.c();
      terms_.push_back({t.degree, v.a() * scale, v.b() * scale});
    }
  }

  bool contains(std::uint64_t n) const {
    Threshold th = spec_.schedule.at(n);
    if (fast_ && th.exact_value() && th.exact_value()->is_rational()) {
      BigInt X = 0, Y = 0;
      BigInt nn = n;
      for (const auto& t : terms_) {
        BigInt pw = ipow(nn, t.degree);
        X += t.A * pw;
        Y += t.B * pw;
      }
      // M = nearest integer to (X + Y sqrt d)/C = floor((2X + C + 2Y sqrt d) / (2C))
      BigInt s = 0;
      if (Y != 0) {
        BigInt r = isqrt(4 * Y * Y * d_);
        s = Y > 0 ? r : BigInt(-r - 1);
      }
      BigInt M = floor_div(2 * X + C_ + s, 2 * C_);
      // |X - M C + Y sqrt d| <= theta C, theta = u/w
      Rational theta = th.exact_value()->to_rational();
      BigInt w = theta.get_den(), u = theta.get_num();
      BigInt Z = (X - M * C_) * w;
      BigInt W = Y * w;
      BigInt bound = u * C_;
      return sign_xy(Z - bound, W, d_) <= 0 && sign_xy(Z + bound, W, d_) >= 0;
    }
    return compare_distance(evaluate(spec_.poly, BigInt(n)), th) != Comparison::Above;
  }

 private:
  struct Term {
    unsigned degree;
    BigInt A, B;
  };
  const RecurrenceSetSpec& spec_;
  bool fast_ = false;
  BigInt d_, C_;
  std::vector<Term> terms_;
};

}  // namespace

bool contains(const RecurrenceSetSpec& spec, std::uint64_t n) {
  return compare_distance(evaluate(spec.poly, BigInt(n)), spec.schedule.at(n)) != Comparison::Above;
}

Bitset enumerate(const RecurrenceSetSpec& spec, std::uint64_t T, const EnumerateOptions& opts) {
  if (opts.chunk == 0 || opts.chunk % 64) throw InvalidArgument("recurrence", "chunk size must be a positive multiple of 64");
  Bitset bits(static_cast<std::size_t>(T) + 1);
  Tester tester(spec);
  const std::uint64_t nchunks = T / opts.chunk + 1;
  std::vector<std::exception_ptr> errors(nchunks);
  std::mutex mu;
  std::uint64_t next = 0;
  auto worker = [&]() {
    for (;;) {
      std::uint64_t c;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= nchunks) return;
        c = next++;
      }
      std::uint64_t lo = c * opts.chunk;
      std::uint64_t hi = std::min<std::uint64_t>(T, lo + opts.chunk - 1);
      try {
        for (std::uint64_t n = lo; n <= hi; ++n)
          if (tester.contains(n)) bits.set(n);  // chunks are word-aligned, no sharing
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  unsigned nt = std::max(1u, opts.threads);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return bits;
}

Rational density(const Bitset& members) {
  if (members.size() < 2) throw InvalidArgument("recurrence", "density needs T >= 1");
  std::size_t c = members.count() - (members.test(0) ? 1 : 0);
  return make_rational(c, members.size() - 1);
}

Rational density(const RecurrenceSetSpec& spec, std::uint64_t T) {
  if (T < 1) throw InvalidArgument("recurrence", "density needs T >= 1");
  return density(enumerate(spec, T));
}

}  // namespace recbases

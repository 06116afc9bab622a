#include "recbases/real.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <regex>

#include "recbases/errors.hpp"

namespace recbases {

namespace detail {
void register_builtin_generators();  // generators.cpp
}

PrecisionPolicy& precision_policy() {
  static PrecisionPolicy policy;
  return policy;
}

struct RealDescriptor::Impl {
  Kind kind = Kind::Rational;
  QuadraticNumber exact;

  // CFStream
  BigInt a0;
  DigitSource source;
  std::string generator_id;
  bool periodic = false;
  std::vector<BigInt> prefix, period;
  mutable std::mutex mu;
  mutable std::vector<BigInt> digits{BigInt(0)};  // digits[0] unused placeholder for a0
  mutable std::vector<BigInt> p, q;              // convergents by index

  // DecimalLiteral
  std::string literal;
  Rational literal_value;
  unsigned stated_bits = 0;

  // Enclosure
  EnclosureSource enclosure;
  std::size_t max_level = 0;
  std::string enclosure_id;

  // Affine
  std::shared_ptr<const Impl> base;
  Rational scale{1}, shift{0};

  BigInt digit_locked(std::size_t i) const {
    if (i == 0) return a0;
    while (digits.size() <= i) {
      std::vector<BigInt> prev(digits.begin() + 1, digits.end());
      BigInt next = source(digits.size(), prev);
      if (next < 1) throw InvalidArgument("realkernel", "digit source produced a_i < 1 at i=" + std::to_string(digits.size()));
      digits.push_back(std::move(next));
    }
    return digits[i];
  }

  // Extend convergents until q_n q_{n+1} >= 2^bits; returns n.
  std::size_t convergents_for(unsigned bits) const {
    if (p.empty()) {
      p.push_back(a0);
      q.push_back(1);
      BigInt a1 = digit_locked(1);
      p.push_back(a1 * a0 + 1);
      q.push_back(a1);
    }
    Rational target = pow2(bits);
    std::size_t n = 0;
    for (;;) {
      if (n + 1 >= p.size()) {
        std::size_t k = p.size();
        BigInt ak = digit_locked(k);
        p.push_back(ak * p[k - 1] + p[k - 2]);
        q.push_back(ak * q[k - 1] + q[k - 2]);
      }
      if (Rational(q[n] * q[n + 1]) >= target) return n;
      ++n;
    }
  }
};

namespace {
std::once_flag builtin_once;

std::map<std::string, GeneratorFactory>& generator_registry() {
  static std::map<std::string, GeneratorFactory> r;
  return r;
}
std::map<std::string, EnclosureFactory>& enclosure_registry() {
  static std::map<std::string, EnclosureFactory> r;
  return r;
}
std::mutex registry_mu;

unsigned add_sat(unsigned a, unsigned long b) {
  unsigned long s = static_cast<unsigned long>(a) + b;
  return s > UINT_MAX ? UINT_MAX : static_cast<unsigned>(s);
}
}  // namespace

void register_generator(const std::string& name, GeneratorFactory factory) {
  std::lock_guard<std::mutex> lock(registry_mu);
  generator_registry()[name] = std::move(factory);
}

void register_enclosure(const std::string& name, EnclosureFactory factory) {
  std::lock_guard<std::mutex> lock(registry_mu);
  enclosure_registry()[name] = std::move(factory);
}

RealDescriptor::RealDescriptor() : impl_(std::make_shared<Impl>()) {}

RealDescriptor RealDescriptor::rational(const Rational& q) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Rational;
  impl->exact = QuadraticNumber(q);
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::quadratic(const QuadraticNumber& x) {
  auto impl = std::make_shared<Impl>();
  impl->kind = x.is_rational() ? Kind::Rational : Kind::QuadraticSurd;
  impl->exact = x;
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  if (c <= 0) throw InvalidArgument("realkernel", "surd needs c > 0");
  if (d < 2) throw InvalidArgument("realkernel", "surd needs d >= 2");
  return quadratic(QuadraticNumber(a, b, c, d));
}

RealDescriptor RealDescriptor::cf_stream(const BigInt& a0, DigitSource source, std::string generator_id) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::CFStream;
  impl->a0 = a0;
  impl->source = std::move(source);
  impl->generator_id = std::move(generator_id);
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::cf_periodic(const BigInt& a0, std::vector<BigInt> prefix, std::vector<BigInt> period) {
  if (period.empty()) throw InvalidArgument("realkernel", "empty period");
  for (const auto& v : prefix)
    if (v < 1) throw InvalidArgument("realkernel", "continued fraction digits must be >= 1");
  for (const auto& v : period)
    if (v < 1) throw InvalidArgument("realkernel", "continued fraction digits must be >= 1");
  DigitSource src = [prefix, period](std::size_t i, const std::vector<BigInt>&) -> BigInt {
    if (i <= prefix.size()) return prefix[i - 1];
    return period[(i - prefix.size() - 1) % period.size()];
  };
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::CFStream;
  impl->a0 = a0;
  impl->source = std::move(src);
  impl->periodic = true;
  impl->prefix = std::move(prefix);
  impl->period = std::move(period);
  impl->generator_id = "periodic";
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::decimal(std::string digits, unsigned bits) {
  if (bits == 0) throw InvalidArgument("realkernel", "decimal literal needs a stated precision");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::DecimalLiteral;
  impl->literal_value = parse_rational(digits);
  impl->literal = std::move(digits);
  impl->stated_bits = bits;
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::enclosure(EnclosureSource source, std::size_t max_level, std::string id) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Enclosure;
  impl->enclosure = std::move(source);
  impl->max_level = max_level;
  impl->enclosure_id = std::move(id);
  return RealDescriptor(impl);
}

RealDescriptor RealDescriptor::affine(const RealDescriptor& base, const Rational& scale, const Rational& shift) {
  if (scale == 0) return rational(shift);
  if (base.is_exact()) return quadratic(*base.exact() * QuadraticNumber(scale) + QuadraticNumber(shift));
  if (scale == 1 && shift == 0) return base;
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Affine;
  if (base.impl_->kind == Kind::Affine) {
    impl->base = base.impl_->base;
    impl->scale = scale * base.impl_->scale;
    impl->shift = scale * base.impl_->shift + shift;
    if (impl->scale == 1 && impl->shift == 0) return RealDescriptor(impl->base);
  } else {
    impl->base = base.impl_;
    impl->scale = scale;
    impl->shift = shift;
  }
  return RealDescriptor(impl);
}

RealDescriptor::Kind RealDescriptor::kind() const { return impl_->kind; }

std::optional<QuadraticNumber> RealDescriptor::exact() const {
  if (!is_exact()) return std::nullopt;
  return impl_->exact;
}

Rational RealDescriptor::as_rational() const {
  if (kind() != Kind::Rational) throw InvalidArgument("realkernel", "not a rational: " + serialize());
  return impl_->exact.to_rational();
}

unsigned RealDescriptor::max_bits() const {
  switch (impl_->kind) {
    case Kind::DecimalLiteral:
      return impl_->stated_bits;
    case Kind::Affine: {
      unsigned b = RealDescriptor(impl_->base).max_bits();
      if (b == UINT_MAX) return b;
      unsigned long extra = 2 + bit_length(ceil_q(abs(impl_->scale)));
      return b > extra ? static_cast<unsigned>(b - extra) : 0;
    }
    default:
      return UINT_MAX;
  }
}

IntervalValue RealDescriptor::to_interval(unsigned bits) const {
  if (bits == 0) throw InvalidArgument("realkernel", "precision_bits must be >= 1");
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::Rational:
    case Kind::QuadraticSurd:
      return im.exact.enclose(bits);
    case Kind::CFStream: {
      std::lock_guard<std::mutex> lock(im.mu);
      std::size_t n = im.convergents_for(bits + 1);
      Rational x = make_rational(im.p[n], im.q[n]);
      Rational y = make_rational(im.p[n + 1], im.q[n + 1]);
      IntervalValue raw = x < y ? IntervalValue(x, y) : IntervalValue(y, x);
      return raw.rounded_outward(bits + 2);
    }
    case Kind::DecimalLiteral: {
      if (bits > im.stated_bits) {
        throw PrecisionExhausted("realkernel", "decimal literal '" + im.literal + "' states only " +
                                                   std::to_string(im.stated_bits) + " bits", bits);
      }
      Rational r = pow2(-static_cast<long>(im.stated_bits) - 2);
      return IntervalValue(im.literal_value - r, im.literal_value + r).rounded_outward(bits + 2);
    }
    case Kind::Enclosure: {
      Rational target = pow2(-static_cast<long>(bits) - 1);
      for (std::size_t level = 0; level <= im.max_level; ++level) {
        IntervalValue iv = im.enclosure(level);
        if (iv.width() <= target) return iv.rounded_outward(bits + 2);
      }
      throw PrecisionExhausted("realkernel", "enclosure '" + im.enclosure_id + "' has no level fine enough", bits);
    }
    case Kind::Affine: {
      unsigned sub = add_sat(bits, 2 + bit_length(ceil_q(abs(im.scale))));
      IntervalValue b = RealDescriptor(im.base).to_interval(sub);
      return (b.scaled(im.scale) + im.shift).rounded_outward(bits + 2);
    }
  }
  throw InvalidArgument("realkernel", "unknown descriptor kind");
}

BigInt RealDescriptor::cf_digit(std::size_t index) const {
  if (impl_->kind != Kind::CFStream) throw InvalidArgument("realkernel", "cf_digit on a non-stream descriptor");
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->digit_locked(index);
}

const std::string& RealDescriptor::generator_id() const { return impl_->generator_id; }

double RealDescriptor::approx() const {
  unsigned b = std::min(60u, max_bits());
  return to_double(to_interval(b).midpoint());
}

namespace {
std::string join_digits(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s;
}
}  // namespace

std::string RealDescriptor::serialize() const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::Rational: {
      Rational r = im.exact.to_rational();
      return "rat:" + to_string(r.get_num()) + "/" + to_string(r.get_den());
    }
    case Kind::QuadraticSurd:
      return "surd:" + im.exact.to_string();
    case Kind::CFStream: {
      if (im.periodic) {
        std::string s = "cf:[" + to_string(im.a0) + ";" + join_digits(im.prefix);
        if (!im.prefix.empty()) s += ",";
        return s + "(" + join_digits(im.period) + ")]";
      }
      std::vector<BigInt> shown;
      for (std::size_t i = 1; i <= 8; ++i) shown.push_back(cf_digit(i));
      return "cf:[" + to_string(im.a0) + ";" + join_digits(shown) + "]+gen:" + im.generator_id;
    }
    case Kind::DecimalLiteral:
      return "dec:" + im.literal + "~bits=" + std::to_string(im.stated_bits);
    case Kind::Enclosure:
      return "enc:" + im.enclosure_id;
    case Kind::Affine:
      return "affine:" + to_string(im.scale) + "," + to_string(im.shift) + ":" + RealDescriptor(im.base).serialize();
  }
  return {};
}

namespace {
std::vector<BigInt> parse_digit_list(std::string_view s) {
  std::vector<BigInt> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    std::string_view tok = s.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) out.push_back(parse_bigint(tok));
    pos = comma + 1;
  }
  return out;
}

RealDescriptor parse_surd(std::string_view body) {
  static const std::regex plain(R"(^\s*sqrt\(\s*(\d+)\s*\)\s*$)");
  static const std::regex full(
      R"(^\s*\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*(\d+))?\s*$)");
  std::string s(body);
  std::smatch m;
  if (std::regex_match(s, m, plain)) return RealDescriptor::surd(0, 1, 1, parse_bigint(m[1].str()));
  if (std::regex_match(s, m, full)) {
    BigInt b = parse_bigint(m[3].str());
    if (m[2].str() == "-") b = -b;
    BigInt c = m[5].matched ? parse_bigint(m[5].str()) : BigInt(1);
    return RealDescriptor::surd(parse_bigint(m[1].str()), b, c, parse_bigint(m[4].str()));
  }
  throw InvalidArgument("realkernel", "bad surd literal '" + s + "', expected (a+b*sqrt(d))/c");
}

Rational finite_cf_value(const BigInt& a0, const std::vector<BigInt>& digits) {
  Rational v(0);
  bool have = false;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v = have ? Rational(Rational(*it) + 1 / v) : Rational(*it);
    have = true;
  }
  return have ? Rational(Rational(a0) + 1 / v) : Rational(a0);
}

RealDescriptor parse_cf(std::string_view body) {
  // [a0;a1,...,(p1,...)] or [a0;a1,...]+gen:name[:args]
  if (body.empty() || body.front() != '[') throw InvalidArgument("realkernel", "cf literal must start with '['");
  std::size_t close = body.find(']');
  if (close == std::string_view::npos) throw InvalidArgument("realkernel", "cf literal missing ']'");
  std::string_view inner = body.substr(1, close - 1);
  std::string_view rest = body.substr(close + 1);
  std::size_t semi = inner.find(';');
  BigInt a0 = parse_bigint(inner.substr(0, semi));
  std::string_view tail = semi == std::string_view::npos ? std::string_view{} : inner.substr(semi + 1);
  std::vector<BigInt> prefix, period;
  std::size_t paren = tail.find('(');
  if (paren != std::string_view::npos) {
    std::size_t pclose = tail.find(')', paren);
    if (pclose == std::string_view::npos) throw InvalidArgument("realkernel", "cf period missing ')'");
    prefix = parse_digit_list(tail.substr(0, paren));
    period = parse_digit_list(tail.substr(paren + 1, pclose - paren - 1));
  } else {
    prefix = parse_digit_list(tail);
  }
  for (const auto& v : prefix)
    if (v < 1) throw InvalidArgument("realkernel", "continued fraction digits must be >= 1");
  if (!period.empty()) {
    if (!rest.empty()) throw InvalidArgument("realkernel", "periodic cf literal cannot also name a generator");
    return RealDescriptor::cf_periodic(a0, prefix, period);
  }
  if (rest.empty()) return RealDescriptor::rational(finite_cf_value(a0, prefix));
  constexpr std::string_view gen = "+gen:";
  if (rest.substr(0, gen.size()) != gen) throw InvalidArgument("realkernel", "expected '+gen:' after cf prefix");
  std::string_view spec = rest.substr(gen.size());
  std::size_t colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  GeneratorFactory factory;
  {
    std::lock_guard<std::mutex> lock(registry_mu);
    auto it = generator_registry().find(name);
    if (it == generator_registry().end()) throw InvalidArgument("realkernel", "unknown cf generator '" + name + "'");
    factory = it->second;
  }
  RealDescriptor x = factory(a0, prefix, args);
  if (x.cf_digit(0) != a0) throw InvalidArgument("realkernel", "generator a0 does not match the literal");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (x.cf_digit(i + 1) != prefix[i]) {
      throw InvalidArgument("realkernel", "generator '" + name + "' disagrees with the stated prefix at digit " +
                                              std::to_string(i + 1));
    }
  }
  return x;
}
}  // namespace

RealDescriptor RealDescriptor::parse(std::string_view text) {
  std::call_once(builtin_once, detail::register_builtin_generators);
  auto starts = [&](std::string_view p) { return text.substr(0, p.size()) == p; };
  if (starts("rat:")) return rational(parse_rational(text.substr(4)));
  if (starts("surd:")) return parse_surd(text.substr(5));
  if (starts("cf:")) return parse_cf(text.substr(3));
  if (starts("dec:")) {
    std::string_view body = text.substr(4);
    std::size_t tilde = body.find("~bits=");
    if (tilde == std::string_view::npos) throw InvalidArgument("realkernel", "decimal literal needs '~bits=N'");
    unsigned long bits = parse_bigint(body.substr(tilde + 6)).get_ui();
    return decimal(std::string(body.substr(0, tilde)), static_cast<unsigned>(bits));
  }
  if (starts("enc:")) {
    std::string_view body = text.substr(4);
    std::size_t colon = body.find(':');
    std::string name(body.substr(0, colon));
    std::string_view args = colon == std::string_view::npos ? std::string_view{} : body.substr(colon + 1);
    EnclosureFactory factory;
    {
      std::lock_guard<std::mutex> lock(registry_mu);
      auto it = enclosure_registry().find(name);
      if (it == enclosure_registry().end()) throw InvalidArgument("realkernel", "unknown enclosure '" + name + "'");
      factory = it->second;
    }
    return factory(args);
  }
  if (starts("affine:")) {
    std::string_view body = text.substr(7);
    std::size_t colon = body.find(':');
    std::size_t comma = body.find(',');
    if (colon == std::string_view::npos || comma == std::string_view::npos || comma > colon) {
      throw InvalidArgument("realkernel", "affine literal must read affine:scale,shift:base");
    }
    return affine(parse(body.substr(colon + 1)), parse_rational(body.substr(0, comma)),
                  parse_rational(body.substr(comma + 1, colon - comma - 1)));
  }
  throw InvalidArgument("realkernel", "unrecognized real literal '" + std::string(text) + "'");
}

}  // namespace recbases

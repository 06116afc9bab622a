#include "recbases/linear_form.hpp"

#include <algorithm>
#include <map>

#include "recbases/errors.hpp"

namespace recbases {

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Below:
      return "Below";
    case Comparison::Equal:
      return "Equal";
    case Comparison::Above:
      return "Above";
  }
  return "?";
}

Threshold Threshold::exact(const QuadraticNumber& x) {
  Threshold t;
  t.exact_ = x;
  return t;
}

Threshold Threshold::enclosed(std::function<IntervalValue(unsigned)> enclose) {
  Threshold t;
  t.enclose_ = std::move(enclose);
  return t;
}

IntervalValue Threshold::enclose(unsigned bits) const {
  if (exact_) return exact_->enclose(bits);
  if (!enclose_) throw InvalidArgument("realkernel", "empty threshold");
  return enclose_(bits);
}

double Threshold::approx() const { return to_double(enclose(64).midpoint()); }

LinearForm& LinearForm::add(const BigInt& coeff, const RealDescriptor& x) {
  if (coeff == 0) return *this;
  if (x.is_rational()) {
    constant_ += Rational(coeff) * x.as_rational();
    return *this;
  }
  terms_.emplace_back(coeff, x);
  return *this;
}

LinearForm& LinearForm::add_constant(const Rational& c) {
  constant_ += c;
  return *this;
}

bool LinearForm::all_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_exact(); });
}

LinearForm::Split LinearForm::split() const {
  Split s;
  s.rational = constant_;
  std::map<BigInt, Rational> surds;
  for (const auto& [c, x] : terms_) {
    QuadraticNumber v = *x.exact();
    s.rational += Rational(c) * v.rational_part();
    if (!v.is_rational()) surds[v.d()] += Rational(c) * v.surd_part();
  }
  for (auto& [d, coef] : surds)
    if (coef != 0) s.surds.emplace_back(d, coef);
  return s;
}

std::optional<QuadraticNumber> LinearForm::exact_value() const {
  if (!all_exact()) return std::nullopt;
  Split s = split();
  if (s.surds.size() > 1) return std::nullopt;
  QuadraticNumber v(s.rational);
  if (!s.surds.empty()) {
    const Rational& b = s.surds[0].second;
    v += QuadraticNumber(0, b.get_num(), b.get_den(), s.surds[0].first);
  }
  return v;
}

bool LinearForm::exact_is_rational() const {
  if (!all_exact()) throw InvalidArgument("realkernel", "exact test on a form with inexact terms");
  return split().surds.empty();
}

bool LinearForm::exact_is_integer() const {
  if (!all_exact()) throw InvalidArgument("realkernel", "exact test on a form with inexact terms");
  Split s = split();
  return s.surds.empty() && s.rational.get_den() == 1;
}

namespace {
unsigned ceil_log2(std::size_t n) {
  unsigned r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}
}  // namespace

unsigned LinearForm::max_bits() const {
  unsigned best = UINT_MAX;
  unsigned extra_n = ceil_log2(terms_.size()) + 1;
  for (const auto& [c, x] : terms_) {
    unsigned mb = x.max_bits();
    if (mb == UINT_MAX) continue;
    unsigned long need = bit_length(c) + extra_n;
    best = std::min<unsigned>(best, mb > need ? static_cast<unsigned>(mb - need) : 0);
  }
  return best;
}

IntervalValue LinearForm::enclose(unsigned bits) const {
  IntervalValue acc(constant_);
  if (terms_.empty()) return acc;
  unsigned extra_n = ceil_log2(terms_.size()) + 1;
  for (const auto& [c, x] : terms_) {
    unsigned long want = static_cast<unsigned long>(bits) + bit_length(c) + extra_n;
    if (want > UINT_MAX) throw PrecisionExhausted("realkernel", "precision overflow", bits);
    acc = acc + x.to_interval(static_cast<unsigned>(want)).scaled(Rational(c));
  }
  return acc.rounded_outward(bits + 2);
}

FractionalDistance fractional_distance(const LinearForm& form, unsigned bits) {
  FractionalDistance out;
  if (auto v = form.exact_value()) {
    out.exact = true;
    out.value = v->fractional_distance(&out.nearest);
    out.enclosure = out.value.enclose(bits);
    return out;
  }
  unsigned b = std::min(bits, form.max_bits());
  out.enclosure = form.enclose(b).nearest_integer_distance();
  return out;
}

FractionalDistance fractional_distance(const RealDescriptor& x, const BigInt& m, unsigned bits) {
  return fractional_distance(LinearForm(m, x), bits);
}

namespace {
Comparison from_sign(int s) { return s < 0 ? Comparison::Below : (s > 0 ? Comparison::Above : Comparison::Equal); }
}  // namespace

Comparison compare_distance(const LinearForm& form, const Threshold& theta) {
  const PrecisionPolicy& pol = precision_policy();
  std::optional<QuadraticNumber> exact = form.exact_value();
  std::optional<QuadraticNumber> dist;
  if (exact) dist = exact->fractional_distance();

  if (dist && theta.exact_value() && same_field(*dist, *theta.exact_value())) {
    return from_sign((*dist - *theta.exact_value()).sign());
  }

  unsigned cap = std::min(pol.max_bits, form.max_bits());
  unsigned bits = std::min(pol.initial_bits, cap);
  for (;;) {
    IntervalValue t = theta.enclose(bits);
    if (dist) {
      if (*dist < QuadraticNumber(t.lo())) return Comparison::Below;
      if (QuadraticNumber(t.hi()) < *dist) return Comparison::Above;
    } else {
      IntervalValue d = form.enclose(bits).nearest_integer_distance();
      if (d.hi() < t.lo()) return Comparison::Below;
      if (d.lo() > t.hi()) return Comparison::Above;
      if (d.is_point() && t.is_point() && d.lo() == t.lo()) return Comparison::Equal;
    }
    if (bits >= cap) break;
    bits = bits > cap / 2 ? cap : bits * 2;
  }
  throw Undecidable("realkernel", "cannot separate ||x|| from the threshold", cap);
}

Comparison compare_abs(const LinearForm& form, const Threshold& theta) {
  const PrecisionPolicy& pol = precision_policy();
  std::optional<QuadraticNumber> v = form.exact_value();
  if (v) {
    QuadraticNumber a = v->abs();
    if (theta.exact_value() && same_field(a, *theta.exact_value())) return from_sign((a - *theta.exact_value()).sign());
  }
  unsigned cap = std::min(pol.max_bits, form.max_bits());
  unsigned bits = std::min(pol.initial_bits, cap);
  for (;;) {
    IntervalValue t = theta.enclose(bits);
    if (v) {
      QuadraticNumber a = v->abs();
      if (a < QuadraticNumber(t.lo())) return Comparison::Below;
      if (QuadraticNumber(t.hi()) < a) return Comparison::Above;
    } else {
      IntervalValue d = form.enclose(bits).abs();
      if (d.hi() < t.lo()) return Comparison::Below;
      if (d.lo() > t.hi()) return Comparison::Above;
      if (d.is_point() && t.is_point() && d.lo() == t.lo()) return Comparison::Equal;
    }
    if (bits >= cap) break;
    bits = bits > cap / 2 ? cap : bits * 2;
  }
  throw Undecidable("realkernel", "cannot separate |x| from the threshold", cap);
}

Comparison cmp_threshold(const RealDescriptor& x, const BigInt& m, const Rational& theta) {
  if (theta < 0 || theta > Rational(1, 2)) throw InvalidArgument("realkernel", "theta must lie in [0, 1/2]");
  return compare_distance(LinearForm(m, x), Threshold(theta));
}

}  // namespace recbases

#pragma once

#include <climits>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recbases/bigint.hpp"
#include "recbases/interval.hpp"
#include "recbases/quadratic.hpp"

namespace recbases {

// Produces digit a_i (i >= 1) of a continued fraction given a_1..a_{i-1}.
// Must be deterministic; the descriptor memoizes the results.
using DigitSource = std::function<BigInt(std::size_t index, const std::vector<BigInt>& previous)>;

// Level l -> closed interval; levels must nest and shrink to a point.
using EnclosureSource = std::function<IntervalValue(std::size_t level)>;

// Caps on adaptive refinement. Overridable process-wide (the CLI exposes it).
struct PrecisionPolicy {
  unsigned initial_bits = 64;
  unsigned max_bits = 1u << 16;
};
PrecisionPolicy& precision_policy();

class RealDescriptor {
 public:
  enum class Kind { Rational, QuadraticSurd, CFStream, DecimalLiteral, Enclosure, Affine };

  RealDescriptor();  // rational zero

  static RealDescriptor rational(const Rational& q);
  // Rational when b == 0 after normalization.
  static RealDescriptor quadratic(const QuadraticNumber& x);
  static RealDescriptor surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d);
  static RealDescriptor cf_stream(const BigInt& a0, DigitSource source, std::string generator_id);
  // Purely periodic tail after an optional prefix: [a0; prefix..., period, period, ...]
  static RealDescriptor cf_periodic(const BigInt& a0, std::vector<BigInt> prefix, std::vector<BigInt> period);
  // The literal is trusted to within 2^-(bits+2).
  static RealDescriptor decimal(std::string digits, unsigned bits);
  static RealDescriptor enclosure(EnclosureSource source, std::size_t max_level, std::string id);
  // scale * base + shift; collapses to an exact value when base is exact
  static RealDescriptor affine(const RealDescriptor& base, const Rational& scale, const Rational& shift);

  Kind kind() const;
  bool is_exact() const { return kind() == Kind::Rational || kind() == Kind::QuadraticSurd; }
  bool is_rational() const { return kind() == Kind::Rational; }
  std::optional<QuadraticNumber> exact() const;
  Rational as_rational() const;  // throws unless Rational

  // Width <= 2^-bits, dyadic endpoints, nested in bits. Throws
  // PrecisionExhausted when the source cannot deliver.
  IntervalValue to_interval(unsigned bits) const;
  // Largest precision that to_interval accepts (UINT_MAX when unbounded).
  unsigned max_bits() const;

  // CFStream digit access; index 0 is a_0.
  BigInt cf_digit(std::size_t index) const;
  const std::string& generator_id() const;

  std::string serialize() const;
  static RealDescriptor parse(std::string_view text);

  double approx() const;

  struct Impl;

 private:
  explicit RealDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Resolves "+gen:<name>" suffixes of the cf: text form (periodic expansions
// use "(...)" instead). The exceptional construction registers "exceptional".
using GeneratorFactory = std::function<RealDescriptor(const BigInt& a0, const std::vector<BigInt>& prefix,
                                                      std::string_view args)>;
void register_generator(const std::string& name, GeneratorFactory factory);
// Resolves "enc:<name>:<args>" descriptors.
using EnclosureFactory = std::function<RealDescriptor(std::string_view args)>;
void register_enclosure(const std::string& name, EnclosureFactory factory);

}  // namespace recbases

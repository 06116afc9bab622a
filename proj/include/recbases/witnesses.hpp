#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recbases/obstruction.hpp"
#include "recbases/real.hpp"

namespace recbases {

// Powers of a unit phi = x + y sqrt(d) of norm +1.
class PellSequence {
 public:
  // Fundamental solution of x^2 - d y^2 = 1 from the period of sqrt(d).
  explicit PellSequence(const BigInt& d);
  PellSequence(const BigInt& d, const BigInt& x, const BigInt& y);

  const BigInt& d() const { return d_; }
  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  // phi^i = X_i + Y_i sqrt(d); X_i, Y_i satisfy Z_{i+2} = 2x Z_{i+1} - Z_i.
  const BigInt& X(std::size_t i) const;
  const BigInt& Y(std::size_t i) const;
  // phi^2
  PellSequence squared() const;

 private:
  void extend(std::size_t i) const;
  BigInt d_, x_, y_;
  mutable std::vector<BigInt> xs_, ys_;
};

struct Provenance {
  enum class Family { PellSqrt2, PellSurd, BadApprox, Generic, HighDeg };
  Family family = Family::PellSqrt2;
  std::size_t index = 0;  // Pell power i, convergent index i, or level
  unsigned kappa = 0;     // BadApprox
  unsigned long k = 0;    // modulus of the certificate
  std::size_t j = 0;      // Generic: pattern offset
  BigInt A;               // Generic: pattern digit
  unsigned mu = 0;        // PellSurd
  std::size_t period = 0; // PellSurd: L
};
const char* to_string(Provenance::Family f);

struct WitnessRecord {
  BigInt N;
  Provenance provenance;
  ObstructionCertificate certificate;
  std::string to_json() const;
};

struct WitnessOptions {
  BigInt floor = 10;  // records with N below this are dropped
};

std::string witnesses_to_json(const std::vector<WitnessRecord>& records);

std::vector<WitnessRecord> pell_witnesses_sqrt2(std::size_t count, const WitnessOptions& opts = {});

std::vector<WitnessRecord> pell_witnesses_surd(const RealDescriptor& alpha, std::size_t count,
                                               const WitnessOptions& opts = {});

// Works on the expansion of 2 alpha. kappa = floor(log2(digit_bound)) + 1.
std::vector<WitnessRecord> badapprox_witnesses(const RealDescriptor& alpha, std::size_t count,
                                               const BigInt& digit_bound, const WitnessOptions& opts = {},
                                               std::size_t max_index = 20000);

// Occurrences of (A, A, A) among the digits a_1.. a_scan_limit of 2 alpha.
std::vector<WitnessRecord> generic_witnesses(const RealDescriptor& alpha, const BigInt& A, std::size_t count,
                                             std::size_t scan_limit, const WitnessOptions& opts = {});

// Recomputes N from the provenance parameters alone (HighDeg records return N).
BigInt reproduce_n(const RealDescriptor& alpha, const WitnessRecord& rec);

}  // namespace recbases

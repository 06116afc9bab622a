#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recbases/linear_form.hpp"
#include "recbases/real.hpp"

namespace recbases {

enum class VerificationLevel { AlgebraOnly, AlgebraAndBruteForce, Refuted };
const char* to_string(VerificationLevel v);

// N alpha = m/k + gamma/(k N) modulo 1, with k even, m odd, gcd(m, k) = 1 and
// |gamma| < 1 - delta. Then N is not in 2A for any eps(n) <= eps0_max = delta/(2k).
struct ObstructionCertificate {
  RealDescriptor alpha;
  BigInt N;
  unsigned long k = 0;
  BigInt m;
  bool gamma_exact = false;
  QuadraticNumber gamma;          // when exact
  IntervalValue gamma_enclosure;  // always
  Rational delta;
  Rational eps0_max;
  VerificationLevel verified = VerificationLevel::AlgebraOnly;

  std::string to_json() const;
  static ObstructionCertificate from_json(const std::string& text);
};

// Relative slack applied to the |gamma| upper bound when deriving delta.
Rational certificate_slack();

// Certificate for the given (N, k, m), or nothing when the parity, coprimality
// or |gamma| < 1 conditions fail.
std::optional<ObstructionCertificate> make_certificate(const RealDescriptor& alpha, const BigInt& N, unsigned long k,
                                                       const BigInt& m);

// Best certificate over even k <= k_max with m the integer nearest k N alpha.
std::optional<ObstructionCertificate> certify(const RealDescriptor& alpha, const BigInt& N, unsigned long k_max);

struct VerificationOutcome {
  VerificationLevel level = VerificationLevel::Refuted;
  std::string detail;
  Rational eps0_checked;  // brute-force epsilon when one ran
};

// Re-derives the inequality chain. When N <= T_check also searches all
// decompositions n + (N - n) at eps0 (default: eps0_max shrunk by the slack).
VerificationOutcome verify_certificate(const ObstructionCertificate& cert, std::uint64_t T_check,
                                       std::optional<Rational> eps0 = std::nullopt);

struct ScanEntry {
  unsigned long k = 0;
  FractionalDistance distance;  // ||k N alpha||
  double quality = 0;           // k * ||k N alpha||
};
std::vector<ScanEntry> rational_obstruction_scan(const RealDescriptor& alpha, const BigInt& N, unsigned long k_max,
                                                 const Rational& bound_scale);

struct ExactForm {
  unsigned long k = 0;
  BigInt m;
  bool gamma_exact = false;
  QuadraticNumber gamma;
  IntervalValue gamma_enclosure;
  double margin = 0;  // (1 - |gamma|) / (2k)
  bool reliable = false;
};
std::optional<ExactForm> exact_form(const RealDescriptor& alpha, const BigInt& N, const Rational& eps1,
                                    unsigned long k_cap = 64, std::uint64_t reliable_from = 100);

struct LimitCheck {
  enum class Kind { LimitObstruction, Degenerate, Inconclusive };
  Kind kind = Kind::Inconclusive;
  unsigned long k = 0;
  IntervalValue gamma_limit;
  std::optional<QuadraticNumber> gamma_candidate;
  bool candidate_consistent = true;
  std::uint64_t irrationality_checked_to = 0;
  std::uint64_t degenerate_n = 0;  // Degenerate / Inconclusive: the offending n
};
// Certificates must share k. An exact candidate for the limit may be given;
// it is then used for the integrality search (and may stand in for the
// certificates entirely, for testing the degeneracy logic alone).
LimitCheck limit_obstruction_check(const RealDescriptor& alpha, const std::vector<ObstructionCertificate>& certs,
                                   unsigned long k, std::uint64_t n_bound,
                                   std::optional<QuadraticNumber> gamma_candidate = std::nullopt);

struct GapDiagnostic {
  BigInt L;
  BigInt m;
  FractionalDistance distance;  // ||m L alpha||
  IntervalValue triangle_bound; // k ||k' N' alpha|| + k' ||k N alpha||
  bool triangle_holds = false;
  BigInt Q0;  // least q with ||q alpha|| <= ||m L alpha||
};
GapDiagnostic gap_bound_diagnostic(const RealDescriptor& alpha, const BigInt& N, const BigInt& N2, unsigned long k,
                                   unsigned long k2);

}  // namespace recbases

#include "recbases/obstruction.hpp"

#include <algorithm>

#include <json.hpp>

#include "recbases/contfrac.hpp"
#include "recbases/errors.hpp"
#include "recbases/recurrence.hpp"

namespace recbases {

using json = nlohmann::ordered_json;

const char* to_string(VerificationLevel v) {
  switch (v) {
    case VerificationLevel::AlgebraOnly:
      return "algebra";
    case VerificationLevel::AlgebraAndBruteForce:
      return "brute";
    case VerificationLevel::Refuted:
      return "refuted";
  }
  return "?";
}

Rational certificate_slack() { return pow2(-20); }

namespace {

constexpr unsigned kGammaBits = 64;

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Integer nearest to c * alpha, if an enclosure pins it down.
std::optional<BigInt> nearest_multiple(const RealDescriptor& alpha, const BigInt& c) {
  if (auto v = alpha.exact()) return (QuadraticNumber(Rational(c)) * *v).nearest_integer();
  LinearForm f(c, alpha);
  IntervalValue iv = f.enclose(std::min(64u, f.max_bits()));
  BigInt lo = round_q(iv.lo()), hi = round_q(iv.hi());
  if (lo != hi) return std::nullopt;
  return lo;
}

// gamma = N (k N alpha - m), exact or enclosed to 2^-bits
void compute_gamma(const RealDescriptor& alpha, const BigInt& N, unsigned long k, const BigInt& m, unsigned bits,
                   bool& exact, QuadraticNumber& gamma, IntervalValue& enclosure) {
  BigInt kN2 = BigInt(k) * N * N;
  if (auto v = alpha.exact()) {
    exact = true;
    gamma = QuadraticNumber(Rational(kN2)) * *v - QuadraticNumber(Rational(m * N));
    enclosure = gamma.enclose(bits);
    return;
  }
  exact = false;
  LinearForm f(kN2, alpha);
  f.add_constant(Rational(-m * N));
  unsigned cap = f.max_bits();
  if (cap < 8) throw PrecisionExhausted("obstruction", "alpha cannot pin down gamma", cap);
  enclosure = f.enclose(std::min(bits, cap));
}

Rational abs_upper(bool exact, const QuadraticNumber& g, const IntervalValue& enc) {
  if (exact) return dyadic_ceil(g.abs().enclose(kGammaBits + 2).hi(), kGammaBits);
  return dyadic_ceil(enc.abs().hi(), kGammaBits);
}

}  // namespace

std::optional<ObstructionCertificate> make_certificate(const RealDescriptor& alpha, const BigInt& N, unsigned long k,
                                                       const BigInt& m) {
  if (N < 1 || N % 2 == 0) return std::nullopt;
  if (k == 0 || k % 2 != 0) return std::nullopt;
  if (m % 2 == 0) return std::nullopt;
  if (gcd_big(m, BigInt(k)) != 1) return std::nullopt;
  ObstructionCertificate c;
  c.alpha = alpha;
  c.N = N;
  c.k = k;
  c.m = m;
  compute_gamma(alpha, N, k, m, kGammaBits, c.gamma_exact, c.gamma, c.gamma_enclosure);
  Rational g = std::max(abs_upper(c.gamma_exact, c.gamma, c.gamma_enclosure), pow2(-static_cast<long>(kGammaBits)));
  c.delta = dyadic_floor(1 - g * (1 + certificate_slack()), kGammaBits);
  if (c.delta <= 0) return std::nullopt;
  c.eps0_max = c.delta / (2 * k);
  c.verified = VerificationLevel::AlgebraOnly;
  return c;
}

std::optional<ObstructionCertificate> certify(const RealDescriptor& alpha, const BigInt& N, unsigned long k_max) {
  if (N < 1) throw InvalidArgument("obstruction", "certify needs N >= 1");
  if (N % 2 == 0) throw InvalidParity("obstruction", "N = " + to_string(N) + " is even; certificates need odd N");
  std::optional<ObstructionCertificate> best;
  for (unsigned long k = 2; k <= k_max; k += 2) {
    auto m = nearest_multiple(alpha, BigInt(k) * N);
    if (!m) continue;
    auto c = make_certificate(alpha, N, k, *m);
    if (c && (!best || c->eps0_max > best->eps0_max)) best = std::move(c);
  }
  return best;
}

VerificationOutcome verify_certificate(const ObstructionCertificate& cert, std::uint64_t T_check,
                                       std::optional<Rational> eps0) {
  VerificationOutcome out;
  auto refute = [&](const std::string& why) {
    out.level = VerificationLevel::Refuted;
    out.detail = why;
    return out;
  };
  if (cert.N < 1 || cert.N % 2 == 0) return refute("N must be odd and positive");
  if (cert.k == 0 || cert.k % 2 != 0) return refute("k must be even and positive");
  if (cert.m % 2 == 0) return refute("m must be odd");
  if (gcd_big(cert.m, BigInt(cert.k)) != 1) return refute("gcd(m, k) != 1");
  if (cert.delta <= 0 || cert.delta >= 1) return refute("delta must lie in (0, 1)");
  if (cert.eps0_max != cert.delta / (2 * cert.k)) return refute("eps0_max != delta / (2k)");

  bool exact;
  QuadraticNumber g;
  IntervalValue enc;
  compute_gamma(cert.alpha, cert.N, cert.k, cert.m, 2 * kGammaBits, exact, g, enc);
  Rational limit = 1 - cert.delta;
  if (exact) {
    if (cert.gamma_exact && !(g == cert.gamma)) return refute("gamma does not match N(kN alpha - m)");
    if (!(g.abs() < QuadraticNumber(limit))) return refute("|gamma| >= 1 - delta");
  } else {
    if (enc.disjoint(cert.gamma_enclosure)) return refute("gamma enclosure does not match N(kN alpha - m)");
    if (!(enc.abs().hi() < limit)) return refute("|gamma| < 1 - delta not established");
  }
  out.level = VerificationLevel::AlgebraOnly;
  out.detail = "inequality chain re-derived";

  if (cert.N > T_check) return out;
  Rational e = eps0 ? *eps0 : cert.eps0_max * (1 - certificate_slack());
  if (e <= 0 || e > cert.eps0_max) throw InvalidArgument("obstruction", "brute-force eps0 must lie in (0, eps0_max]");
  out.eps0_checked = e;
  RecurrenceSetSpec spec{monomial(cert.alpha, 2), EpsilonSchedule::constant(e)};
  std::uint64_t N = cert.N.get_ui();
  for (std::uint64_t n = 0; 2 * n <= N; ++n) {
    if (contains(spec, n) && contains(spec, N - n)) {
      return refute("decomposition " + std::to_string(n) + " + " + std::to_string(N - n) + " found at eps0 " +
                    to_string(e));
    }
  }
  out.level = VerificationLevel::AlgebraAndBruteForce;
  out.detail = "inequality chain re-derived; no decomposition at eps0 " + to_string(e);
  return out;
}

std::vector<ScanEntry> rational_obstruction_scan(const RealDescriptor& alpha, const BigInt& N, unsigned long k_max,
                                                 const Rational& bound_scale) {
  if (N < 1) throw InvalidArgument("obstruction", "scan needs N >= 1");
  std::vector<ScanEntry> out;
  Threshold bound(bound_scale / Rational(N));
  for (unsigned long k = 1; k <= k_max; ++k) {
    LinearForm f(BigInt(k) * N, alpha);
    if (compare_distance(f, bound) == Comparison::Above) continue;
    ScanEntry e;
    e.k = k;
    e.distance = fractional_distance(f, 64);
    e.quality = static_cast<double>(k) * to_double(e.distance.enclosure.midpoint());
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const ScanEntry& a, const ScanEntry& b) { return a.quality < b.quality; });
  return out;
}

std::optional<ExactForm> exact_form(const RealDescriptor& alpha, const BigInt& N, const Rational& eps1,
                                    unsigned long k_cap, std::uint64_t reliable_from) {
  if (N < 1) throw InvalidArgument("obstruction", "exact_form needs N >= 1");
  if (N % 2 == 0) return std::nullopt;
  std::optional<ExactForm> best;
  for (unsigned long k = 2; k <= k_cap; k += 2) {
    auto m = nearest_multiple(alpha, BigInt(k) * N);
    if (!m || *m % 2 == 0 || gcd_big(*m, BigInt(k)) != 1) continue;
    ExactForm f;
    f.k = k;
    f.m = *m;
    compute_gamma(alpha, N, k, *m, kGammaBits, f.gamma_exact, f.gamma, f.gamma_enclosure);
    // (1 - |gamma|) / (2k) > eps1  <=>  |gamma| < 1 - 2k eps1
    Rational lim = 1 - 2 * Rational(k) * eps1;
    bool ok = f.gamma_exact ? f.gamma.abs() < QuadraticNumber(lim) : f.gamma_enclosure.abs().hi() < lim;
    if (!ok) continue;
    double g = to_double(f.gamma_enclosure.abs().midpoint());
    f.margin = (1 - g) / (2.0 * static_cast<double>(k));
    f.reliable = N >= reliable_from;
    if (!best || f.margin > best->margin) best = f;
  }
  return best;
}

LimitCheck limit_obstruction_check(const RealDescriptor& alpha, const std::vector<ObstructionCertificate>& certs,
                                   unsigned long k, std::uint64_t n_bound,
                                   std::optional<QuadraticNumber> gamma_candidate) {
  LimitCheck out;
  out.k = k;
  for (const auto& c : certs)
    if (c.k != k) throw InvalidArgument("obstruction", "certificates must share k");
  if (certs.size() < 2 && !gamma_candidate) {
    throw InvalidArgument("obstruction", "need at least two certificates or an exact candidate for the limit");
  }
  if (certs.size() >= 2) {
    const IntervalValue& last = certs.back().gamma_enclosure;
    const IntervalValue& prev = certs[certs.size() - 2].gamma_enclosure;
    Rational tol = 2 * (last - prev).abs().hi() + pow2(-60);
    out.gamma_limit = IntervalValue(last.lo() - tol, last.hi() + tol);
  } else {
    out.gamma_limit = gamma_candidate->enclose(64);
  }
  if (gamma_candidate) {
    out.gamma_candidate = gamma_candidate;
    IntervalValue ce = gamma_candidate->enclose(64);
    out.candidate_consistent = !ce.disjoint(out.gamma_limit);
  }
  for (std::uint64_t n = 0; n <= n_bound; ++n) {
    BigInt kn2 = BigInt(k) * BigInt(n) * BigInt(n);
    if (gamma_candidate && alpha.is_exact()) {
      LinearForm f(kn2, alpha);
      f.add(1, RealDescriptor::quadratic(*gamma_candidate));
      if (f.exact_is_integer()) {
        out.kind = LimitCheck::Kind::Degenerate;
        out.degenerate_n = n;
        return out;
      }
      continue;
    }
    // interval route: gamma_limit + k n^2 alpha must keep away from the integers
    LinearForm f(kn2, alpha);
    IntervalValue v = f.enclose(std::min(96u, f.max_bits()));
    IntervalValue g = gamma_candidate ? gamma_candidate->enclose(96) : out.gamma_limit;
    if ((v + g).nearest_integer_distance().lo() <= 0) {
      out.kind = LimitCheck::Kind::Inconclusive;
      out.degenerate_n = n;
      return out;
    }
  }
  out.kind = LimitCheck::Kind::LimitObstruction;
  out.irrationality_checked_to = n_bound;
  return out;
}

GapDiagnostic gap_bound_diagnostic(const RealDescriptor& alpha, const BigInt& N, const BigInt& N2, unsigned long k,
                                   unsigned long k2) {
  if (!(N < N2)) throw InvalidArgument("obstruction", "gap diagnostic needs N < N'");
  if (k == 0 || k2 == 0) throw InvalidArgument("obstruction", "gap diagnostic needs k, k' >= 1");
  GapDiagnostic d;
  d.L = N2 - N;
  d.m = BigInt(k) * BigInt(k2);
  LinearForm f(d.m * d.L, alpha);
  d.distance = fractional_distance(f, 96);
  FractionalDistance a = fractional_distance(LinearForm(BigInt(k2) * N2, alpha), 96);
  FractionalDistance b = fractional_distance(LinearForm(BigInt(k) * N, alpha), 96);
  d.triangle_bound = a.enclosure.scaled(Rational(k)) + b.enclosure.scaled(Rational(k2));
  if (d.distance.exact && a.exact && b.exact && same_field(a.value, b.value)) {
    QuadraticNumber rhs = QuadraticNumber(Rational(k)) * a.value + QuadraticNumber(Rational(k2)) * b.value;
    d.triangle_holds = !(rhs < d.distance.value);
  } else {
    d.triangle_holds = d.distance.enclosure.lo() <= d.triangle_bound.hi();
  }
  if (d.distance.exact && d.distance.value.sign() > 0) {
    Threshold t = Threshold::exact(d.distance.value);
    CFExpansion cf(alpha);
    // least convergent denominator q with ||q alpha|| <= ||m L alpha||
    BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    for (std::size_t n = 0;; ++n) {
      BigInt an = cf.digit(n);
      BigInt qn = an * qm1 + qm2;
      BigInt pn = an * pm1 + pm2;
      if (compare_distance(LinearForm(qn, alpha), t) != Comparison::Above) {
        d.Q0 = qn;
        break;
      }
      pm2 = pm1;
      qm2 = qm1;
      pm1 = pn;
      qm1 = qn;
    }
  } else if (d.distance.enclosure.hi() > 0) {
    d.Q0 = least_denominator(alpha, d.distance.enclosure.hi());
  }
  return d;
}

// ---- JSON -------------------------------------------------------------------

namespace {
json big_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return to_string(v);
}
BigInt big_from_json(const json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  return BigInt(std::to_string(j.get<long long>()));
}
}  // namespace

std::string ObstructionCertificate::to_json() const {
  json j;
  j["N"] = big_to_json(N);
  j["k"] = k;
  j["m"] = big_to_json(m);
  j["gamma_lo"] = recbases::to_string(gamma_enclosure.lo());
  j["gamma_hi"] = recbases::to_string(gamma_enclosure.hi());
  j["gamma_approx"] = to_double(gamma_enclosure.midpoint());
  if (gamma_exact) j["gamma_exact"] = gamma.to_string();
  j["delta"] = recbases::to_string(delta);
  j["eps0_max"] = recbases::to_string(eps0_max);
  j["eps0_max_approx"] = to_double(eps0_max);
  j["verified"] = recbases::to_string(verified);
  j["alpha"] = alpha.serialize();
  return j.dump();
}

ObstructionCertificate ObstructionCertificate::from_json(const std::string& text) {
  json j = json::parse(text);
  ObstructionCertificate c;
  c.alpha = RealDescriptor::parse(j.at("alpha").get<std::string>());
  c.N = big_from_json(j.at("N"));
  c.k = j.at("k").get<unsigned long>();
  c.m = big_from_json(j.at("m"));
  c.gamma_enclosure =
      IntervalValue(parse_rational(j.at("gamma_lo").get<std::string>()), parse_rational(j.at("gamma_hi").get<std::string>()));
  if (j.contains("gamma_exact")) {
    RealDescriptor g = RealDescriptor::parse("surd:" + j.at("gamma_exact").get<std::string>());
    c.gamma_exact = true;
    c.gamma = *g.exact();
  }
  c.delta = parse_rational(j.at("delta").get<std::string>());
  c.eps0_max = parse_rational(j.at("eps0_max").get<std::string>());
  std::string v = j.value("verified", "algebra");
  c.verified = v == "brute" ? VerificationLevel::AlgebraAndBruteForce
                            : (v == "refuted" ? VerificationLevel::Refuted : VerificationLevel::AlgebraOnly);
  return c;
}

}  // namespace recbases

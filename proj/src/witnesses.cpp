#include "recbases/witnesses.hpp"

#include <set>

#include <json.hpp>

#include "recbases/contfrac.hpp"
#include "recbases/errors.hpp"

namespace recbases {

using json = nlohmann::ordered_json;

PellSequence::PellSequence(const BigInt& d) : d_(d) {
  if (d < 2 || !is_squarefree(d)) throw InvalidArgument("witnesses", "Pell needs squarefree d >= 2");
  CFExpansion cf(RealDescriptor::surd(0, 1, 1, d));
  BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  for (std::size_t n = 0;; ++n) {
    BigInt a = cf.digit(n);
    BigInt p = a * pm1 + pm2, q = a * qm1 + qm2;
    if (p * p - d * q * q == 1) {
      x_ = p;
      y_ = q;
      break;
    }
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
  }
  xs_ = {1, x_};
  ys_ = {0, y_};
}

PellSequence::PellSequence(const BigInt& d, const BigInt& x, const BigInt& y) : d_(d), x_(x), y_(y) {
  if (x * x - d * y * y != 1) throw InvalidArgument("witnesses", "x^2 - d y^2 != 1");
  xs_ = {1, x_};
  ys_ = {0, y_};
}

void PellSequence::extend(std::size_t i) const {
  while (xs_.size() <= i) {
    std::size_t n = xs_.size();
    xs_.push_back(2 * x_ * xs_[n - 1] - xs_[n - 2]);
    ys_.push_back(2 * x_ * ys_[n - 1] - ys_[n - 2]);
  }
}

const BigInt& PellSequence::X(std::size_t i) const {
  extend(i);
  return xs_[i];
}

const BigInt& PellSequence::Y(std::size_t i) const {
  extend(i);
  return ys_[i];
}

PellSequence PellSequence::squared() const { return PellSequence(d_, x_ * x_ + d_ * y_ * y_, 2 * x_ * y_); }

const char* to_string(Provenance::Family f) {
  switch (f) {
    case Provenance::Family::PellSqrt2:
      return "pell_sqrt2";
    case Provenance::Family::PellSurd:
      return "pell_surd";
    case Provenance::Family::BadApprox:
      return "badapprox";
    case Provenance::Family::Generic:
      return "generic";
    case Provenance::Family::HighDeg:
      return "highdeg";
  }
  return "?";
}

std::string WitnessRecord::to_json() const {
  json p;
  p["family"] = to_string(provenance.family);
  switch (provenance.family) {
    case Provenance::Family::PellSqrt2:
      p["i"] = provenance.index;
      break;
    case Provenance::Family::PellSurd:
      p["i"] = provenance.index;
      p["mu"] = provenance.mu;
      p["L"] = provenance.period;
      break;
    case Provenance::Family::BadApprox:
      p["i"] = provenance.index;
      p["kappa"] = provenance.kappa;
      p["k_i"] = provenance.k;
      break;
    case Provenance::Family::Generic:
      p["j"] = provenance.j;
      p["i"] = provenance.index;
      p["A"] = recbases::to_string(provenance.A);
      break;
    case Provenance::Family::HighDeg:
      p["level"] = provenance.index;
      break;
  }
  json j;
  if (N.fits_slong_p()) j["N"] = N.get_si(); else j["N"] = recbases::to_string(N);
  j["provenance"] = p;
  j["certificate"] = json::parse(certificate.to_json());
  return j.dump();
}

std::string witnesses_to_json(const std::vector<WitnessRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(json::parse(r.to_json()));
  return arr.dump(2);
}

namespace {

ObstructionCertificate must_certify(const RealDescriptor& alpha, const BigInt& N, unsigned long k, const BigInt& m) {
  auto c = make_certificate(alpha, N, k, m);
  if (!c) throw std::logic_error("witness (" + to_string(N) + ", " + std::to_string(k) + ", " + to_string(m) +
                                 ") fails the certificate conditions");
  return *c;
}

unsigned long pow2_ul(unsigned long e) {
  if (e >= 63) throw ResourceLimit("witnesses", "modulus 2^" + std::to_string(e) + " does not fit a machine word");
  return 1ul << e;
}

// Incremental convergents of a CF expansion.
struct ConvergentWalk {
  const CFExpansion& cf;
  std::size_t n = 0;
  BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  BigInt a, p, q;
  explicit ConvergentWalk(const CFExpansion& c) : cf(c) {}
  void step() {
    a = cf.digit(n);
    p = a * pm1 + pm2;
    q = a * qm1 + qm2;
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
    ++n;
  }
};

}  // namespace

std::vector<WitnessRecord> pell_witnesses_sqrt2(std::size_t count, const WitnessOptions& opts) {
  if (count < 1) throw InvalidArgument("witnesses", "count must be >= 1");
  PellSequence pell(2, 3, 2);
  RealDescriptor alpha = RealDescriptor::surd(0, 1, 1, 2);
  std::vector<WitnessRecord> out;
  for (std::size_t i = 3; out.size() < count; i += 2) {
    BigInt N = pell.Y(i) / 2;
    if (N < opts.floor) continue;
    WitnessRecord r;
    r.N = N;
    r.provenance.family = Provenance::Family::PellSqrt2;
    r.provenance.index = i;
    r.provenance.k = 2;
    r.certificate = must_certify(alpha, N, 2, pell.X(i));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<WitnessRecord> pell_witnesses_surd(const RealDescriptor& alpha, std::size_t count,
                                               const WitnessOptions& opts) {
  if (count < 1) throw InvalidArgument("witnesses", "count must be >= 1");
  auto ex = alpha.exact();
  if (!ex) throw InvalidArgument("witnesses", "pell_surd needs an exact quadratic alpha");
  if (ex->is_rational()) throw DegenerateAlpha("witnesses", "alpha is rational (b = 0)");
  const BigInt a = ex->a(), b = ex->b(), c = ex->c(), d = ex->d();
  const BigInt babs = abs_big(b);
  const unsigned vb = valuation2(babs), vc = valuation2(c);

  PellSequence phi(d);
  while (!(valuation2(phi.y()) > vb && pow2(valuation2(phi.y())) > Rational(babs * c))) phi = phi.squared();
  const unsigned mu = valuation2(phi.y());

  // period of phi^i modulo 2^e, e above every valuation that matters
  const unsigned e = std::max(vc + mu, vb) + 1;
  const BigInt mod = BigInt(1) << e;
  std::size_t L = 1;
  {
    BigInt X = phi.x() % mod, Y = phi.y() % mod;
    while (!(X == 1 && Y == 0)) {
      BigInt nx = (X * phi.x() + d * Y * phi.y()) % mod;
      BigInt ny = (X * phi.y() + Y * phi.x()) % mod;
      X = nx < 0 ? nx + mod : nx;
      Y = ny < 0 ? ny + mod : ny;
      ++L;
    }
  }
  const unsigned long k = pow2_ul(vc + mu - vb);

  std::vector<WitnessRecord> out;
  std::size_t misses = 0;
  for (std::size_t i = 1; out.size() < count; i += L) {
    const BigInt& X = phi.X(i);
    const BigInt& Y = phi.Y(i);
    BigInt ai = a * Y + b * X, bi = c * Y;
    if (valuation2(abs_big(bi)) != vc + mu || valuation2(abs_big(ai)) != vb) {
      throw std::logic_error("2-adic valuations drifted at i = " + std::to_string(i));
    }
    BigInt N = bi >> (vc + mu);
    BigInt m = ai / (BigInt(1) << vb);
    if (N < opts.floor) continue;
    auto cert = make_certificate(alpha, N, k, m);
    if (!cert) {
      // |gamma_i| < 1 only from some point on
      if (++misses > 64) throw std::logic_error("Pell witnesses never reach |gamma| < 1");
      continue;
    }
    WitnessRecord r;
    r.N = N;
    r.provenance.family = Provenance::Family::PellSurd;
    r.provenance.index = i;
    r.provenance.k = k;
    r.provenance.mu = mu;
    r.provenance.period = L;
    r.certificate = *cert;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<WitnessRecord> badapprox_witnesses(const RealDescriptor& alpha, std::size_t count,
                                               const BigInt& digit_bound, const WitnessOptions& opts,
                                               std::size_t max_index) {
  if (count < 1) throw InvalidArgument("witnesses", "count must be >= 1");
  if (digit_bound < 1) throw InvalidArgument("witnesses", "digit_bound must be >= 1");
  const unsigned kappa = static_cast<unsigned>(bit_length(digit_bound));  // floor(log2) + 1
  RealDescriptor two_alpha = RealDescriptor::affine(alpha, 2, 0);
  CFExpansion cf(two_alpha);
  ConvergentWalk w(cf);
  std::vector<WitnessRecord> out;
  std::set<BigInt> seen;
  while (out.size() < count) {
    if (w.n > max_index) throw ResourceLimit("witnesses", "badapprox scan passed index " + std::to_string(max_index));
    w.step();
    std::size_t i = w.n - 1;
    if (i >= 1 && w.a > digit_bound) {
      throw UnboundedDigits("witnesses", "a_" + std::to_string(i) + " = " + to_string(w.a) + " exceeds " +
                                             to_string(digit_bound));
    }
    if (w.p % 2 == 0) continue;
    unsigned v = valuation2(w.q);
    if (v >= kappa) continue;
    unsigned long k = pow2_ul(v + 1);
    BigInt N = w.q >> v;
    if (N < opts.floor || seen.count(N)) continue;
    WitnessRecord r;
    r.N = N;
    r.provenance.family = Provenance::Family::BadApprox;
    r.provenance.index = i;
    r.provenance.kappa = kappa;
    r.provenance.k = k;
    r.certificate = must_certify(alpha, N, k, w.p);
    seen.insert(N);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<WitnessRecord> generic_witnesses(const RealDescriptor& alpha, const BigInt& A, std::size_t count,
                                             std::size_t scan_limit, const WitnessOptions& opts) {
  if (A < 3 || A % 2 == 0) throw InvalidArgument("witnesses", "pattern digit A must be odd and >= 3");
  if (count < 1) throw InvalidArgument("witnesses", "count must be >= 1");
  RealDescriptor two_alpha = RealDescriptor::affine(alpha, 2, 0);
  CFExpansion cf(two_alpha);
  std::vector<Convergent> conv;
  auto convergent = [&](std::size_t i) -> const Convergent& {
    if (conv.size() <= i) conv = convergents(cf, std::max(i, 2 * conv.size()));
    return conv[i];
  };
  std::vector<WitnessRecord> out;
  std::set<BigInt> seen;
  bool found = false;
  for (std::size_t j = 0; j + 3 <= scan_limit && out.size() < count; ++j) {
    if (!cf.extend(j + 3)) break;
    if (cf.digit(j + 1) != A || cf.digit(j + 2) != A || cf.digit(j + 3) != A) continue;
    found = true;
    for (std::size_t i = j; i <= j + 2; ++i) {
      const Convergent& c = convergent(i);
      if (c.p % 2 == 0 || c.q % 2 == 0) continue;
      if (c.q < opts.floor || seen.count(c.q)) continue;
      auto cert = make_certificate(alpha, c.q, 2, c.p);
      if (!cert) continue;
      WitnessRecord r;
      r.N = c.q;
      r.provenance.family = Provenance::Family::Generic;
      r.provenance.index = i;
      r.provenance.j = j;
      r.provenance.A = A;
      r.provenance.k = 2;
      r.certificate = *cert;
      seen.insert(c.q);
      out.push_back(std::move(r));
      break;
    }
  }
  if (!found) {
    throw PatternNotFound("witnesses", "(" + to_string(A) + "," + to_string(A) + "," + to_string(A) +
                                           ") not among the first " + std::to_string(scan_limit) + " digits of 2 alpha");
  }
  return out;
}

BigInt reproduce_n(const RealDescriptor& alpha, const WitnessRecord& rec) {
  const Provenance& p = rec.provenance;
  switch (p.family) {
    case Provenance::Family::PellSqrt2:
      return PellSequence(2, 3, 2).Y(p.index) / 2;
    case Provenance::Family::PellSurd: {
      auto ex = alpha.exact();
      PellSequence phi(ex->d());
      while (valuation2(phi.y()) < p.mu) phi = phi.squared();
      return (ex->c() * phi.Y(p.index)) >> (valuation2(ex->c()) + p.mu);
    }
    case Provenance::Family::BadApprox: {
      CFExpansion cf(RealDescriptor::affine(alpha, 2, 0));
      BigInt q = convergents(cf, p.index).back().q;
      return q / BigInt(p.k / 2);
    }
    case Provenance::Family::Generic: {
      CFExpansion cf(RealDescriptor::affine(alpha, 2, 0));
      return convergents(cf, p.index).back().q;
    }
    case Provenance::Family::HighDeg:
      return rec.N;
  }
  return rec.N;
}

}  // namespace recbases

#include "recbases/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "recbases/errors.hpp"

namespace recbases {

using json = nlohmann::ordered_json;

std::optional<std::uint64_t> orbit_hits(const RealDescriptor& alpha, std::uint64_t N, const Rational& eps0) {
  if (N < 1) throw InvalidArgument("equidist", "orbit_hits needs N >= 1");
  if (eps0 < 0) throw InvalidArgument("equidist", "eps0 must be >= 0");
  Threshold t(eps0);
  auto small = [&](std::uint64_t n) {
    BigInt b(std::to_string(n));
    return compare_distance(LinearForm(b * b, alpha), t) != Comparison::Above;
  };
  for (std::uint64_t n = 0; n <= N; ++n) {
    if (small(n) && small(N - n)) return n;
  }
  return std::nullopt;
}

namespace {

// Neumaier's compensated sum.
struct Compensated {
  double sum = 0, c = 0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

WeylSum weyl_sum(const Polynomial& terms, const std::vector<long>& freq, std::uint64_t N, unsigned bits) {
  if (N < 1) throw InvalidArgument("equidist", "weyl_sum needs N >= 1");
  if (freq.size() != terms.size()) throw InvalidArgument("equidist", "one frequency per term");
  WeylSum out;
  // scale of the largest coefficient multiplier
  unsigned long mult_bits = 1;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (freq[t] == 0) continue;
    BigInt m = abs_big(BigInt(freq[t]));
    BigInt nd;
    mpz_ui_pow_ui(nd.get_mpz_t(), N, terms[t].degree);
    mult_bits = std::max(mult_bits, bit_length(m * nd) + 1);
  }
  if (bits == 0) bits = static_cast<unsigned>(60 + mult_bits + bit_length(BigInt(terms.size() + 1)));
  const unsigned G = bits + 2;  // to_interval endpoints sit on this grid
  std::vector<BigInt> mant(terms.size());
  double phase_err = std::ldexp(1.0, -62);  // truncation to 62 fractional bits
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (freq[t] == 0) continue;
    unsigned b = std::min(bits, terms[t].coeff.max_bits());
    IntervalValue iv = terms[t].coeff.to_interval(b);
    Rational lo = dyadic_floor(iv.lo(), G);
    mant[t] = BigInt(lo * Rational(BigInt(1) << G));
    // |freq| N^deg |coeff - lo|
    BigInt nd;
    mpz_ui_pow_ui(nd.get_mpz_t(), N, terms[t].degree);
    double w = to_double_up(iv.width() + (iv.lo() - lo));
    phase_err += std::fabs(static_cast<double>(freq[t])) * to_double_up(Rational(nd)) * w;
  }
  out.phase_bits = bits;

  Compensated re, im;
  BigInt acc, tmp, nd, nb;
  const double two_pi = 2 * std::numbers::pi;
  for (std::uint64_t n = 1; n <= N; ++n) {
    acc = 0;
    nb = BigInt(std::to_string(n));
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (freq[t] == 0) continue;
      mpz_pow_ui(nd.get_mpz_t(), nb.get_mpz_t(), terms[t].degree);
      tmp = nd * mant[t];
      mpz_mul_si(tmp.get_mpz_t(), tmp.get_mpz_t(), freq[t]);
      acc += tmp;
    }
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), G);
    // top 62 bits of the fraction
    if (G > 62) mpz_fdiv_q_2exp(acc.get_mpz_t(), acc.get_mpz_t(), G - 62);
    else mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), 62 - G);
    double f = std::ldexp(static_cast<double>(mpz_get_ui(acc.get_mpz_t())), -62);
    if (f >= 0.5) f -= 1.0;
    re.add(std::cos(two_pi * f));
    im.add(std::sin(two_pi * f));
  }
  const double dn = static_cast<double>(N);
  out.re = re.value() / dn;
  out.im = im.value() / dn;
  out.magnitude = std::hypot(out.re, out.im);
  // phase error through e(.), trig and compensated-summation rounding
  out.error_bound = two_pi * phase_err + std::ldexp(1.0, -49);
  return out;
}

std::vector<std::vector<long>> frequency_order(std::size_t dims, long cap) {
  std::vector<std::vector<long>> out;
  if (dims == 0) return out;
  for (long m = 1; m <= cap; ++m) {
    std::vector<long> v(dims, -m);
    while (true) {
      long mx = 0;
      for (long x : v) mx = std::max(mx, std::labs(x));
      auto nz = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
      if (mx == m && nz != v.end() && *nz > 0) out.push_back(v);
      std::size_t i = dims;
      while (i > 0 && v[i - 1] == m) v[--i] = -m;
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  return out;
}

std::string Verdict::to_json() const {
  json j;
  j["verdict"] = obstruction ? "obstruction" : "looks_equidistributed";
  if (obstruction) j["freq"] = freq;
  j["magnitude"] = sum.magnitude;
  j["error_bound"] = sum.error_bound;
  j["scanned"] = scanned;
  j["marginal"] = marginal;
  return j.dump();
}

Verdict equidist_verdict(const Polynomial& terms, std::uint64_t N, const Rational& delta, long freq_cap) {
  if (freq_cap < 1) throw InvalidArgument("equidist", "freq_cap must be >= 1");
  if (terms.empty()) throw InvalidArgument("equidist", "need at least one term");
  const double d = to_double(delta);
  Verdict v;
  double best = -1;
  for (const auto& f : frequency_order(terms.size(), freq_cap)) {
    ++v.scanned;
    WeylSum s = weyl_sum(terms, f, N);
    bool near = std::fabs(s.magnitude - d) <= s.error_bound;
    if (near) {
      s = weyl_sum(terms, f, N, s.phase_bits + 64);
      near = std::fabs(s.magnitude - d) <= s.error_bound;
    }
    if (s.magnitude > d) {
      v.obstruction = true;
      v.freq = f;
      v.sum = s;
      v.marginal = near;
      return v;
    }
    if (near) v.marginal = true;
    if (s.magnitude > best) {
      best = s.magnitude;
      v.sum = s;
      v.freq = f;
    }
  }
  return v;
}

std::vector<LinearForm> pair_coefficients(const Polynomial& p, std::uint64_t N, long k, long l) {
  unsigned deg = 0;
  for (const auto& t : p) deg = std::max(deg, t.degree);
  std::vector<LinearForm> c(deg + 1);
  const BigInt NN(std::to_string(N));
  for (const auto& t : p) {
    const unsigned d = t.degree;
    c[d].add(BigInt(k), t.coeff);
    // l (N - n)^d = l sum_j binom(d, j) N^(d-j) (-1)^j n^j
    for (unsigned j = 0; j <= d; ++j) {
      BigInt b;
      mpz_bin_uiui(b.get_mpz_t(), d, j);
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), NN.get_mpz_t(), d - j);
      BigInt coeff = BigInt(l) * b * pw;
      if (j % 2) coeff = -coeff;
      c[j].add(coeff, t.coeff);
    }
  }
  return c;
}

std::vector<SmoothnessEntry> smoothness_obstruction(const Polynomial& p, std::uint64_t N,
                                                    std::pair<long, long> k_range, std::pair<long, long> l_range) {
  if (k_range.first > k_range.second || l_range.first > l_range.second) {
    throw InvalidArgument("equidist", "empty k or l range");
  }
  if (k_range == std::pair<long, long>{0, 0} && l_range == std::pair<long, long>{0, 0}) {
    throw InvalidArgument("equidist", "(k, l) = (0, 0) is excluded");
  }
  unsigned deg = 0;
  for (const auto& t : p) deg = std::max(deg, t.degree);
  if (deg < 1) throw InvalidArgument("equidist", "polynomial must have degree >= 1");
  auto coeff_of = [&](unsigned d) {
    LinearForm f;
    for (const auto& t : p)
      if (t.degree == d) f.add(1, t.coeff);
    return f;
  };
  const LinearForm ad = coeff_of(deg), ad1 = coeff_of(deg - 1);
  const BigInt NN(std::to_string(N));

  std::vector<SmoothnessEntry> out;
  for (long k = k_range.first; k <= k_range.second; ++k) {
    for (long l = l_range.first; l <= l_range.second; ++l) {
      if (k == 0 && l == 0) continue;
      SmoothnessEntry e;
      e.k = k;
      e.l = l;
      e.norm.N = N;
      auto c = pair_coefficients(p, N, k, l);
      bool first = true;
      BigInt Nj = 1;
      for (unsigned j = 1; j < c.size(); ++j) {
        Nj *= NN;
        IntervalValue dist = fractional_distance(c[j], 64).enclosure;
        e.norm.coefficients.emplace_back(j, dist);
        IntervalValue scaled = dist.scaled(Rational(Nj));
        if (first) {
          e.norm.value = scaled;
          first = false;
        } else {
          e.norm.value = IntervalValue(std::max(e.norm.value.lo(), scaled.lo()), std::max(e.norm.value.hi(), scaled.hi()));
        }
      }
      auto scaled_form = [](const LinearForm& f, const BigInt& s) {
        LinearForm g;
        for (const auto& [cf, x] : f.terms()) g.add(cf * s, x);
        g.add_constant(f.constant() * Rational(s));
        return g;
      };
      const long sd = deg % 2 ? -1 : 1;
      e.leading = fractional_distance(scaled_form(ad, BigInt(k + sd * l)), 64).enclosure;
      LinearForm sub = scaled_form(ad1, BigInt(k - sd * l));
      LinearForm tail = scaled_form(ad, BigInt(-sd * l) * BigInt(deg) * NN);
      for (const auto& [cf, x] : tail.terms()) sub.add(cf, x);
      sub.add_constant(tail.constant());
      e.subleading = fractional_distance(sub, 64).enclosure;
      out.push_back(std::move(e));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SmoothnessEntry& a, const SmoothnessEntry& b) {
    return a.norm.value.midpoint() < b.norm.value.midpoint();
  });
  return out;
}

}  // namespace recbases

#include "recbases/higherdeg.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "recbases/errors.hpp"

namespace recbases {

using json = nlohmann::ordered_json;

std::string GammaParams::to_compact() const {
  std::ostringstream s;
  s << "d=" << d << ";bits=" << (branch_bits.empty() ? "-" : branch_bits) << ";levels=" << levels
    << ";n1=" << to_string(N1) << ";ratio=" << to_string(ratio);
  return s.str();
}

GammaParams GammaParams::from_compact(const std::string& text) {
  GammaParams p;
  std::stringstream ss(text);
  std::string field;
  try {
    while (std::getline(ss, field, ';')) {
      if (field.empty()) continue;
      std::size_t eq = field.find('=');
      if (eq == std::string::npos) throw InvalidArgument("higherdeg", "gamma field '" + field + "' lacks '='");
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "d")
        p.d = static_cast<unsigned>(std::stoul(val));
      else if (key == "bits")
        p.branch_bits = val == "-" ? "" : val;
      else if (key == "levels")
        p.levels = std::stoul(val);
      else if (key == "n1")
        p.N1 = parse_bigint(val);
      else if (key == "ratio")
        p.ratio = parse_rational(val);
      else
        throw InvalidArgument("higherdeg", "unknown gamma field '" + key + "'");
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("higherdeg", "malformed gamma parameters '" + text + "'");
  }
  return p;
}

std::vector<BigInt> GammaConstruction::N_sequence() const {
  std::vector<BigInt> out;
  for (const auto& l : levels) out.push_back(l.N);
  return out;
}

std::string GammaConstruction::to_json() const {
  json j;
  j["d"] = params.d;
  json ns = json::array();
  for (const auto& l : levels) ns.push_back(to_string(l.N));
  j["N"] = ns;
  j["branch_bits"] = params.branch_bits;
  json ch = json::array();
  for (const auto& l : levels) ch.push_back({{"children", l.children}, {"chosen", l.chosen}});
  j["levels"] = ch;
  IntervalValue e = enclosure().rounded_outward(std::min<unsigned>(4096, 64 + 2 * bit_length(levels.back().N) *
                                                                              (params.d + 1)));
  j["enclosure_lo"] = to_string(e.lo());
  j["enclosure_hi"] = to_string(e.hi());
  j["alpha"] = alpha.serialize();
  j["alpha_approx"] = to_double(e.midpoint());
  return j.dump();
}

namespace {

BigInt next_odd_at_least(const Rational& x) {
  BigInt n = ceil_q(x);
  if (n % 2 == 0) ++n;
  return n;
}

BigInt powu(const BigInt& b, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// One level: components of {x : ||N x - 1/2|| <= 1/N^d} inside parent.
GammaLevel choose_child(const IntervalValue& parent, const BigInt& N, unsigned d, char bit, std::size_t level) {
  const Rational r = Rational(1) / Rational(powu(N, d + 1));
  const Rational half(1, 2);
  // center (j + 1/2)/N; need center - r >= lo and center + r <= hi
  BigInt jmin = ceil_q((parent.lo() + r) * Rational(N) - half);
  BigInt jmax = floor_q((parent.hi() - r) * Rational(N) - half);
  GammaLevel g;
  g.N = N;
  g.children = jmax < jmin ? 0 : BigInt(jmax - jmin + 1).get_ui();
  if (jmax < jmin + 1) {
    throw BranchExhausted("higherdeg", "fewer than two children for N = " + to_string(N), level);
  }
  g.chosen = bit == '1' ? 1 : 0;
  Rational c = (Rational(jmin + g.chosen) + half) / Rational(N);
  g.interval = IntervalValue(c - r, c + r);
  return g;
}

struct GammaState {
  GammaParams params;
  std::mutex mu;
  std::vector<GammaLevel> levels;

  const IntervalValue& level(std::size_t l) {
    static const IntervalValue unit(0, 1);
    if (l == 0) return unit;
    std::lock_guard<std::mutex> lock(mu);
    while (levels.size() < l) extend();
    return levels[l - 1].interval;
  }

  void extend() {
    std::size_t i = levels.size() + 1;
    BigInt N = i == 1 ? params.N1 : next_odd_at_least(params.ratio * Rational(powu(levels.back().N, params.d + 1)));
    const IntervalValue& parent = i == 1 ? IntervalValue(0, 1) : levels.back().interval;
    char bit = i <= params.branch_bits.size() ? params.branch_bits[i - 1] : '0';
    levels.push_back(choose_child(parent, N, params.d, bit, i));
  }
};

void check_params(const GammaParams& p) {
  if (p.d < 2) throw InvalidArgument("higherdeg", "gamma construction needs d >= 2");
  if (p.levels < 1) throw InvalidArgument("higherdeg", "levels must be >= 1");
  if (p.N1 < 3 || p.N1 % 2 == 0) throw InvalidArgument("higherdeg", "N_1 must be odd and >= 3");
  if (p.ratio <= 0) throw InvalidArgument("higherdeg", "ratio must be positive");
  for (char c : p.branch_bits)
    if (c != '0' && c != '1') throw InvalidArgument("higherdeg", "branch bits must be 0/1");
}

RealDescriptor gamma_descriptor(std::shared_ptr<GammaState> st) {
  std::string id = "gamma:" + st->params.to_compact();
  // bit lengths grow by a factor d+1 per level; a few levels past the stated
  // ones cover any practical precision
  std::size_t max_level = st->params.levels + 3;
  return RealDescriptor::enclosure([st](std::size_t l) { return st->level(l); }, max_level, id);
}

}  // namespace

GammaConstruction gamma_construct(const GammaParams& params) {
  check_params(params);
  auto st = std::make_shared<GammaState>();
  st->params = params;
  st->level(params.levels);
  GammaConstruction g;
  g.params = params;
  {
    std::lock_guard<std::mutex> lock(st->mu);
    g.levels.assign(st->levels.begin(), st->levels.begin() + static_cast<long>(params.levels));
  }
  g.alpha = gamma_descriptor(st);
  return g;
}

bool gamma_constraints_hold(const GammaConstruction& g) {
  const IntervalValue& e = g.enclosure();
  const Rational half(1, 2);
  IntervalValue parent(0, 1);
  for (const auto& l : g.levels) {
    if (!parent.contains(l.interval) || !l.interval.contains(e)) return false;
    Rational bound = Rational(1) / Rational(powu(l.N, g.params.d));
    // the set is a union of intervals, so checking that the whole enclosure
    // sits within one component is the same as checking its endpoints and
    // that no half-integer offset boundary is crossed
    IntervalValue shifted = e.scaled(Rational(l.N)) - half;
    IntervalValue dist = shifted.nearest_integer_distance();
    if (dist.hi() > bound) return false;
    if (!(l.interval.width() == 2 * bound / Rational(l.N))) return false;
    parent = l.interval;
  }
  return true;
}

std::string HighDegOutcome::to_json() const {
  json j;
  j["verified"] = to_string(outcome.level);
  j["detail"] = outcome.detail;
  j["brute_forced"] = brute_forced;
  j["near_miss_n"] = near_miss_n;
  j["near_miss_max"] = near_miss_max;
  j["telescoped"] = telescoped;
  return j.dump();
}

HighDegOutcome verify_highdeg_witness(const RealDescriptor& alpha, const BigInt& N, unsigned d, const Rational& eps0,
                                      std::uint64_t brute_cap) {
  if (d < 2) throw InvalidArgument("higherdeg", "d must be >= 2");
  if (N < 1 || N % 2 == 0) throw InvalidParity("higherdeg", "N = " + to_string(N) + " must be odd and positive");
  if (eps0 <= 0) throw InvalidArgument("higherdeg", "eps0 must be positive");
  HighDegOutcome out;
  LinearForm f(N, alpha);
  f.add_constant(Rational(-1, 2));
  Threshold bound(Rational(1) / Rational(powu(N, d)));
  if (compare_distance(f, bound) == Comparison::Above) {
    out.outcome.level = VerificationLevel::Refuted;
    out.outcome.detail = "||N alpha - 1/2|| > 1/N^d";
    return out;
  }
  out.outcome.level = VerificationLevel::AlgebraOnly;
  out.outcome.detail = "||N alpha - 1/2|| <= 1/N^d";
  if (N > brute_cap) {
    out.outcome.detail += "; N above the brute-force cap";
    return out;
  }
  out.brute_forced = true;
  out.outcome.eps0_checked = eps0;
  const std::uint64_t n_max = N.get_ui();
  Threshold t(eps0);
  double best = 2;
  for (std::uint64_t n = 0; 2 * n <= n_max; ++n) {
    BigInt a(std::to_string(n)), b(std::to_string(n_max - n));
    LinearForm fa(powu(a, d), alpha), fb(powu(b, d), alpha);
    bool sa = compare_distance(fa, t) != Comparison::Above;
    bool sb = compare_distance(fb, t) != Comparison::Above;
    if (sa && sb) {
      out.outcome.level = VerificationLevel::Refuted;
      out.outcome.detail = "decomposition " + std::to_string(n) + " + " + std::to_string(n_max - n);
      out.near_miss_n = n;
      return out;
    }
    double da = to_double(fractional_distance(fa, 64).enclosure.midpoint());
    double db = to_double(fractional_distance(fb, 64).enclosure.midpoint());
    double m = std::max(da, db);
    if (m < best) {
      best = m;
      out.near_miss_n = n;
    }
  }
  out.near_miss_max = best;
  BigInt a(std::to_string(out.near_miss_n)), b(std::to_string(n_max - out.near_miss_n));
  BigInt coeff = powu(a, d) - (d % 2 ? BigInt(-1) : BigInt(1)) * powu(b, d);
  out.telescoped = to_double(fractional_distance(LinearForm(coeff, alpha), 64).enclosure.midpoint());
  out.outcome.level = VerificationLevel::AlgebraAndBruteForce;
  out.outcome.detail += "; no decomposition at eps0 " + to_string(eps0);
  return out;
}

bool telescoping_identity(const BigInt& n1, const BigInt& n2, unsigned d) {
  if (d < 1) return true;
  BigInt lhs = powu(n1, d) - (d % 2 ? BigInt(-1) : BigInt(1)) * powu(n2, d);
  BigInt s = 0;
  for (unsigned j = 0; j < d; ++j) {
    BigInt term = powu(n1, d - 1 - j) * powu(n2, j);
    s += j % 2 ? BigInt(-term) : term;
  }
  return lhs == (n1 + n2) * s;
}

const char* to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::AllDegreeLE2:
      return "AllDegreeLE2";
    case Trichotomy::FixedLeadingTerm:
      return "FixedLeadingTerm";
    case Trichotomy::GenericBasisExpected:
      return "GenericBasisExpected";
  }
  return "?";
}

namespace {

bool known_zero(const LinearForm& f) {
  if (!f.all_exact()) return false;
  auto v = f.exact_value();
  return v && v->sign() == 0;
}

// Coefficient vectors indexed by degree, repeated degrees summed.
std::vector<std::vector<LinearForm>> coefficient_rows(const std::vector<Polynomial>& polys, unsigned& width) {
  width = 0;
  for (const auto& p : polys)
    for (const auto& t : p) width = std::max(width, t.degree + 1);
  std::vector<std::vector<LinearForm>> rows;
  for (const auto& p : polys) {
    std::vector<LinearForm> row(width);
    for (const auto& t : p) row[t.degree].add(1, t.coeff);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int effective_degree(const Polynomial& p) {
  unsigned width;
  auto rows = coefficient_rows({p}, width);
  for (int j = static_cast<int>(width) - 1; j >= 0; --j)
    if (!known_zero(rows[0][static_cast<std::size_t>(j)])) return j;
  return -1;
}

bool directions_independent(const AffineFamilySpec& family) {
  if (family.directions.empty()) return true;
  unsigned width;
  auto rows = coefficient_rows(family.directions, width);
  // exact elimination when every coefficient is exact and within one field
  bool exact = true;
  std::optional<QuadraticNumber> field;
  for (const auto& r : rows) {
    for (const auto& x : r) {
      auto v = x.all_exact() ? x.exact_value() : std::nullopt;
      if (!v) {
        exact = false;
        continue;
      }
      if (!v->is_rational()) {
        if (field && !same_field(*field, *v)) exact = false;
        field = v;
      }
    }
  }
  const std::size_t m = rows.size();
  if (exact) {
    std::vector<std::vector<QuadraticNumber>> a(m, std::vector<QuadraticNumber>(width));
    for (std::size_t i = 0; i < m; ++i)
      for (unsigned j = 0; j < width; ++j) a[i][j] = *rows[i][j].exact_value();
    std::size_t rank = 0;
    for (unsigned col = 0; col < width && rank < m; ++col) {
      std::size_t piv = rank;
      while (piv < m && a[piv][col].sign() == 0) ++piv;
      if (piv == m) continue;
      std::swap(a[piv], a[rank]);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == rank || a[i][col].sign() == 0) continue;
        QuadraticNumber f = a[i][col] / a[rank][col];
        for (unsigned j = col; j < width; ++j) a[i][j] = a[i][j] - f * a[rank][j];
      }
      ++rank;
    }
    return rank == m;
  }
  std::vector<std::vector<double>> a(m, std::vector<double>(width));
  for (std::size_t i = 0; i < m; ++i)
    for (unsigned j = 0; j < width; ++j) a[i][j] = to_double(rows[i][j].enclose(60).midpoint());
  std::size_t rank = 0;
  for (unsigned col = 0; col < width && rank < m; ++col) {
    std::size_t piv = rank;
    for (std::size_t i = rank; i < m; ++i)
      if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
    if (std::fabs(a[piv][col]) < 1e-9) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      double f = a[i][col] / a[rank][col];
      for (unsigned j = col; j < width; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank == m;
}

Trichotomy family_trichotomy(const AffineFamilySpec& family) {
  if (!directions_independent(family)) throw InvalidArgument("higherdeg", "family directions are dependent");
  int base = effective_degree(family.base);
  int span = -1;
  for (const auto& d : family.directions) span = std::max(span, effective_degree(d));
  int top = std::max(base, span);
  if (top <= 2) return Trichotomy::AllDegreeLE2;
  // every difference of members lies in the span of the directions
  if (span < base) return Trichotomy::FixedLeadingTerm;
  return Trichotomy::GenericBasisExpected;
}

SumsetReport complement_survey_highdeg(const RealDescriptor& alpha, unsigned d, const EpsilonSchedule& eps,
                                       std::uint64_t T, unsigned k, unsigned threads) {
  if (d < 3) throw InvalidArgument("higherdeg", "survey needs d >= 3");
  RecurrenceSetSpec spec{monomial(alpha, d), eps};
  SumsetOptions opts;
  opts.threads = threads;
  return complement(spec, k, T, opts);
}

namespace detail {
void register_gamma_enclosure() {
  register_enclosure("gamma", [](std::string_view args) {
    GammaParams p = GammaParams::from_compact(std::string(args));
    return gamma_construct(p).alpha;
  });
}
}  // namespace detail

}  // namespace recbases

#include "recbases/exceptional.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "recbases/contfrac.hpp"
#include "recbases/errors.hpp"
#include "recbases/recurrence.hpp"
#include "recbases/sumset.hpp"

namespace recbases {

using json = nlohmann::ordered_json;

long GrowthSchedule::at(std::size_t i) const {
  switch (kind) {
    case Kind::Sqrt: {
      long r = static_cast<long>(std::sqrt(static_cast<double>(i)));
      while (static_cast<std::size_t>(r * r) > i) --r;
      while (static_cast<std::size_t>((r + 1) * (r + 1)) <= i) ++r;
      return std::max(1l, r);
    }
    case Kind::Linear:
      return static_cast<long>(i) / div + offset;
    case Kind::Constant:
      return value;
  }
  return 1;
}

std::string GrowthSchedule::to_string() const {
  switch (kind) {
    case Kind::Sqrt:
      return "sqrt";
    case Kind::Linear:
      return "lin:" + std::to_string(div) + "," + std::to_string(offset);
    case Kind::Constant:
      return "const:" + std::to_string(value);
  }
  return "?";
}

GrowthSchedule GrowthSchedule::linear(long div, long offset) {
  GrowthSchedule g;
  g.kind = Kind::Linear;
  g.div = div;
  g.offset = offset;
  return g;
}

GrowthSchedule GrowthSchedule::parse(const std::string& text) {
  GrowthSchedule g;
  try {
    if (text == "sqrt") return g;
    if (text.rfind("lin:", 0) == 0) {
      std::size_t comma = text.find(',');
      if (comma == std::string::npos) throw InvalidArgument("exceptional", "lin schedule reads lin:D,O");
      return linear(std::stol(text.substr(4, comma - 4)), std::stol(text.substr(comma + 1)));
    }
    if (text.rfind("const:", 0) == 0) {
      g.kind = Kind::Constant;
      g.value = std::stol(text.substr(6));
      return g;
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("exceptional", "bad growth schedule '" + text + "'");
  }
  throw InvalidArgument("exceptional", "unknown growth schedule '" + text + "'");
}

const GrowthSchedule& ExceptionalAlphaPlan::schedule(unsigned long p) const {
  auto it = growth.find(p);
  return it == growth.end() ? default_growth : it->second;
}

std::optional<BigInt> ExceptionalAlphaPlan::cap(std::size_t i) const {
  if (!capped) return std::nullopt;
  return BigInt(1) << static_cast<unsigned long>(static_cast<long>(i) / cap_div + cap_offset);
}

void ExceptionalAlphaPlan::validate() const {
  if (primes.empty() || primes.front() != 2) throw InvalidArgument("exceptional", "primes must start with 2");
  for (std::size_t j = 0; j < primes.size(); ++j) {
    unsigned long p = primes[j];
    if (p < 2 || mpz_probab_prime_p(BigInt(p).get_mpz_t(), 30) == 0) {
      throw InvalidArgument("exceptional", std::to_string(p) + " is not prime");
    }
    if (j > 0 && p <= primes[j - 1]) throw InvalidArgument("exceptional", "primes must be strictly increasing");
  }
  auto check = [](const GrowthSchedule& g) {
    if (g.kind == GrowthSchedule::Kind::Linear && (g.div < 1 || g.offset < 0)) {
      throw InvalidArgument("exceptional", "linear schedule needs div >= 1 and offset >= 0");
    }
    if (g.kind == GrowthSchedule::Kind::Constant && g.value < 0) {
      throw InvalidArgument("exceptional", "constant schedule must be >= 0");
    }
  };
  check(default_growth);
  for (const auto& [p, g] : growth) check(g);
  if (capped && (cap_div < 1 || cap_offset < 0)) throw InvalidArgument("exceptional", "cap needs div >= 1, offset >= 0");
}

std::string ExceptionalAlphaPlan::to_compact() const {
  std::ostringstream s;
  s << "p=";
  for (std::size_t j = 0; j < primes.size(); ++j) s << (j ? "," : "") << primes[j];
  s << ";k=" << default_growth.to_string();
  for (const auto& [p, g] : growth) s << ";k" << p << "=" << g.to_string();
  if (capped)
    s << ";h=" << cap_div << "," << cap_offset;
  else
    s << ";h=none";
  return s.str();
}

ExceptionalAlphaPlan ExceptionalAlphaPlan::from_compact(const std::string& text) {
  ExceptionalAlphaPlan plan;
  std::stringstream ss(text);
  std::string field;
  try {
    while (std::getline(ss, field, ';')) {
      if (field.empty()) continue;
      std::size_t eq = field.find('=');
      if (eq == std::string::npos) throw InvalidArgument("exceptional", "plan field '" + field + "' lacks '='");
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "p") {
        plan.primes.clear();
        std::stringstream ps(val);
        std::string t;
        while (std::getline(ps, t, ',')) plan.primes.push_back(std::stoul(t));
      } else if (key == "k") {
        plan.default_growth = GrowthSchedule::parse(val);
      } else if (key.size() > 1 && key[0] == 'k') {
        plan.growth[std::stoul(key.substr(1))] = GrowthSchedule::parse(val);
      } else if (key == "h") {
        if (val == "none") {
          plan.capped = false;
        } else {
          std::size_t comma = val.find(',');
          plan.cap_div = std::stol(val.substr(0, comma));
          plan.cap_offset = comma == std::string::npos ? 0 : std::stol(val.substr(comma + 1));
        }
      } else {
        throw InvalidArgument("exceptional", "unknown plan field '" + key + "'");
      }
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("exceptional", "malformed plan '" + text + "'");
  }
  plan.validate();
  return plan;
}

std::string ExceptionalAlphaPlan::to_json() const {
  json j;
  j["primes"] = primes;
  json g;
  g["default"] = default_growth.to_string();
  for (const auto& [p, s] : growth) g[std::to_string(p)] = s.to_string();
  j["growth"] = g;
  if (capped)
    j["cap"] = {{"div", cap_div}, {"offset", cap_offset}};
  else
    j["cap"] = nullptr;
  return j.dump();
}

ExceptionalAlphaPlan ExceptionalAlphaPlan::from_json(const std::string& text) {
  ExceptionalAlphaPlan plan;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument("exceptional", std::string("plan is not JSON: ") + e.what());
  }
  try {
    if (j.contains("primes")) plan.primes = j["primes"].get<std::vector<unsigned long>>();
    if (j.contains("growth")) {
      const json& g = j["growth"];
      if (g.is_string()) {
        plan.default_growth = GrowthSchedule::parse(g.get<std::string>());
      } else {
        for (auto it = g.begin(); it != g.end(); ++it) {
          if (it.key() == "default")
            plan.default_growth = GrowthSchedule::parse(it.value().get<std::string>());
          else
            plan.growth[std::stoul(it.key())] = GrowthSchedule::parse(it.value().get<std::string>());
        }
      }
    }
    if (j.contains("cap")) {
      if (j["cap"].is_null()) {
        plan.capped = false;
      } else {
        plan.cap_div = j["cap"].value("div", plan.cap_div);
        plan.cap_offset = j["cap"].value("offset", plan.cap_offset);
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument("exceptional", std::string("bad plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

namespace {

BigInt mod_pos(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

std::optional<BigInt> inverse(const BigInt& x, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

// The inductive construction, shared by the stream and the eager builder.
class Builder {
 public:
  explicit Builder(ExceptionalAlphaPlan plan) : plan_(std::move(plan)) { plan_.validate(); }

  BigInt digit(std::size_t i) {
    std::lock_guard<std::mutex> lock(mu_);
    while (a_.size() <= i) step();
    return a_[i];
  }

 private:
  void step() {
    const std::size_t i = a_.size();  // next index, >= 1
    const BigInt& q1 = q_[i];         // q_{i-1}, stored shifted by one
    const BigInt& q2 = q_[i - 1];     // q_{i-2}
    BigInt r = 0, M = 1;
    for (unsigned long p : plan_.primes) {
      const std::size_t target_parity = p == 2 ? 0 : 1;
      BigInt pe, rp;
      if (i % 2 == target_parity) {
        // p^k | q_i = a_i q_{i-1} + q_{i-2}
        long e = plan_.k(p, i);
        if (e <= 0) continue;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
        auto inv = inverse(q1, pe);
        if (!inv) continue;
        rp = mod_pos(-q2 * *inv, pe);
      } else {
        // p does not divide q_i
        pe = p;
        auto inv = inverse(q1, pe);
        if (!inv) continue;
        BigInt bad = mod_pos(-q2 * *inv, pe);
        rp = mod_pos(bad + 1, pe);
      }
      // CRT: r mod M, rp mod pe -> mod M*pe
      BigInt t = mod_pos((rp - r) * *inverse(M, pe), pe);
      r += M * t;
      M *= pe;
    }
    BigInt a = r == 0 ? M : r;
    if (auto h = plan_.cap(i); h && a > *h) {
      throw ScheduleInfeasible("exceptional", "digit a_" + std::to_string(i) + " = " + to_string(a) +
                                                  " exceeds the cap " + to_string(*h));
    }
    a_.push_back(a);
    q_.push_back(a * q1 + q2);
  }

  ExceptionalAlphaPlan plan_;
  std::mutex mu_;
  std::vector<BigInt> a_{0};
  std::vector<BigInt> q_{0, 1};  // q_{-1}, q_0, q_1, ...
};

std::mutex plans_mu;
std::map<std::string, ExceptionalAlphaPlan>& plans() {
  static std::map<std::string, ExceptionalAlphaPlan> m;
  return m;
}

RealDescriptor stream_for(const ExceptionalAlphaPlan& plan) {
  auto b = std::make_shared<Builder>(plan);
  std::string id = "exceptional:" + plan.to_compact();
  {
    std::lock_guard<std::mutex> lock(plans_mu);
    plans().emplace(id, plan);
  }
  return RealDescriptor::cf_stream(0, [b](std::size_t i, const std::vector<BigInt>&) { return b->digit(i); }, id);
}

unsigned valuation_p(const BigInt& n, unsigned long p) {
  if (n == 0) return UINT32_MAX;
  return p == 2 ? valuation2(n) : valuation(n, p);
}

}  // namespace

std::vector<BigInt> exceptional_digits(const ExceptionalAlphaPlan& plan, std::size_t count) {
  Builder b(plan);
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back(b.digit(i));
  return out;
}

RealDescriptor construct_exceptional(const ExceptionalAlphaPlan& plan, std::size_t count) {
  if (count < 1) throw InvalidArgument("exceptional", "count must be >= 1");
  RealDescriptor x = stream_for(plan);
  x.cf_digit(count);
  return x;
}

std::optional<ExceptionalAlphaPlan> plan_of(const RealDescriptor& alpha) {
  if (alpha.kind() != RealDescriptor::Kind::CFStream) return std::nullopt;
  const std::string& id = alpha.generator_id();
  std::lock_guard<std::mutex> lock(plans_mu);
  auto it = plans().find(id);
  if (it != plans().end()) return it->second;
  if (id.rfind("exceptional:", 0) == 0) return ExceptionalAlphaPlan::from_compact(id.substr(12));
  return std::nullopt;
}

const char* to_string(ConditionsReport::Status s) {
  switch (s) {
    case ConditionsReport::Status::Pass:
      return "pass";
    case ConditionsReport::Status::Fail:
      return "fail";
    case ConditionsReport::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string ConditionsReport::to_json() const {
  json j;
  j["status"] = to_string(status);
  j["p"] = p_odd;
  j["count"] = count;
  auto idx = [](std::size_t v) -> json { return v == SIZE_MAX ? json(nullptr) : json(v); };
  j["q2_from"] = idx(q2_from);
  j["qp_from"] = idx(qp_from);
  j["a2_from"] = idx(a2_from);
  j["ap_from"] = idx(ap_from);
  j["recursion_ok"] = recursion_ok;
  j["coprime_ok"] = coprime_ok;
  j["detail"] = detail;
  json rs = json::array();
  for (const auto& r : rows) {
    json row;
    row["i"] = r.i;
    row["a"] = recbases::to_string(r.a);
    row["nu2_q"] = r.v2_q;
    row["nup_q"] = r.vp_q;
    row["nu2_a"] = r.v2_a;
    row["nup_a"] = r.vp_a;
    rs.push_back(row);
  }
  j["rows"] = rs;
  return j.dump(2);
}

ConditionsReport verify_conditions(const RealDescriptor& alpha, std::size_t count, unsigned long p_odd,
                                   std::optional<ExceptionalAlphaPlan> plan) {
  if (p_odd < 3 || mpz_probab_prime_p(BigInt(p_odd).get_mpz_t(), 30) == 0) {
    throw InvalidArgument("exceptional", "p must be an odd prime");
  }
  ConditionsReport rep;
  rep.p_odd = p_odd;
  rep.count = count;
  if (!plan) plan = plan_of(alpha);
  if (!plan) plan = ExceptionalAlphaPlan{};

  CFExpansion cf(alpha);
  std::vector<BigInt> q{0, 1};  // q_{-1}, q_0
  for (std::size_t i = 1; i <= count; ++i) {
    if (!cf.extend(i)) break;
    ConditionRow r;
    r.i = i;
    r.a = cf.digit(i);
    BigInt qi = r.a * q[i] + q[i - 1];
    q.push_back(qi);
    r.q = qi;
    r.v2_q = valuation_p(qi, 2);
    r.vp_q = valuation_p(qi, p_odd);
    r.v2_a = valuation_p(r.a, 2);
    r.vp_a = valuation_p(r.a, p_odd);
    if ((qi - q[i - 1]) % q[i] != 0 || (qi - q[i - 1]) / q[i] != r.a) rep.recursion_ok = false;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), qi.get_mpz_t(), q[i].get_mpz_t());
    if (g != 1) rep.coprime_ok = false;
    rep.rows.push_back(std::move(r));
  }
  if (rep.rows.size() < 4) {
    rep.status = ConditionsReport::Status::Inconclusive;
    rep.detail = "fewer than 4 digits";
    return rep;
  }
  const std::size_t n = rep.rows.size();
  auto k2 = [&](std::size_t i) { return plan->k(2, i); };
  auto kp = [&](std::size_t i) { return plan->k(p_odd, i); };
  // a_i inherits min(k_i, k_{i-2}) through a_i = (q_i - q_{i-2}) / q_{i-1}
  auto settle = [&](std::size_t parity, auto value, auto target) {
    std::size_t from = SIZE_MAX;
    for (std::size_t i = n; i >= 1; --i) {
      if (i % 2 != parity) continue;
      if (static_cast<long>(value(rep.rows[i - 1])) < target(i)) break;
      from = i;
    }
    return from;
  };
  rep.q2_from = settle(0, [](const ConditionRow& r) { return r.v2_q; }, k2);
  rep.qp_from = settle(1, [](const ConditionRow& r) { return r.vp_q; }, kp);
  rep.a2_from = settle(0, [](const ConditionRow& r) { return r.v2_a; },
                       [&](std::size_t i) { return i >= 3 ? std::min(k2(i), k2(i - 2)) : 0l; });
  rep.ap_from = settle(1, [](const ConditionRow& r) { return r.vp_a; },
                       [&](std::size_t i) { return i >= 3 ? std::min(kp(i), kp(i - 2)) : 0l; });
  std::ostringstream why;
  const std::size_t half = n / 2;
  bool ok = rep.recursion_ok && rep.coprime_ok;
  auto need = [&](const char* name, std::size_t from) {
    if (from > half) {
      ok = false;
      why << name << " misses its targets in the second half; ";
    }
  };
  need("nu2(q_i), i even", rep.q2_from);
  need("nup(q_i), i odd", rep.qp_from);
  need("nu2(a_i), i even", rep.a2_from);
  need("nup(a_i), i odd", rep.ap_from);
  if (k2(n) < 2 || kp(n) < 2) {
    ok = false;
    why << "planned targets have not grown past 1 by index " << n << "; ";
  }
  if (!rep.recursion_ok) why << "a_i = (q_i - q_{i-2})/q_{i-1} violated; ";
  if (!rep.coprime_ok) why << "gcd(q_i, q_{i-1}) != 1; ";
  rep.status = ok ? ConditionsReport::Status::Pass : ConditionsReport::Status::Fail;
  rep.detail = ok ? "all targets met from the reported indices on" : why.str();
  return rep;
}

GrowthProfile growth_profile(const RealDescriptor& alpha, std::size_t count) {
  GrowthProfile g;
  CFExpansion cf(alpha);
  for (std::size_t i = 1; i <= count && cf.extend(i); ++i) {
    BigInt a = cf.digit(i);
    double v = std::log(to_double(Rational(a))) / static_cast<double>(i);
    g.log_ratio.emplace_back(i, v);
    if (4 * i >= count && 2 * i < count) g.early_max = std::max(g.early_max, v);
    if (2 * i >= count) g.late_max = std::max(g.late_max, v);
  }
  g.decaying = g.late_max <= g.early_max;
  return g;
}

std::string BasisReport::to_json() const {
  json j;
  j["eps0"] = to_string(eps0);
  j["T"] = T;
  j["complement"] = complement;
  j["largest"] = largest ? json(*largest) : json(nullptr);
  return j.dump();
}

BasisReport basis_check(const RealDescriptor& alpha, const Rational& eps0, std::uint64_t T, unsigned threads) {
  if (eps0 <= 0) throw InvalidArgument("exceptional", "eps0 must be positive");
  BasisReport rep;
  rep.eps0 = eps0;
  rep.T = T;
  RecurrenceSetSpec spec{monomial(alpha, 2), EpsilonSchedule::constant(eps0)};
  SumsetOptions opts;
  opts.threads = threads;
  rep.complement = complement(spec, 2, T, opts).complement;
  if (!rep.complement.empty()) rep.largest = rep.complement.back();
  return rep;
}

namespace detail {
void register_exceptional_generator() {
  register_generator("exceptional", [](const BigInt& a0, const std::vector<BigInt>&, std::string_view args) {
    if (a0 != 0) throw InvalidArgument("exceptional", "exceptional streams have a0 = 0");
    return stream_for(ExceptionalAlphaPlan::from_compact(std::string(args)));
  });
}
}  // namespace detail

}  // namespace recbases

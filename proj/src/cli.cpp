#include "recbases/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "recbases/contfrac.hpp"
#include "recbases/equidist.hpp"
#include "recbases/errors.hpp"
#include "recbases/exceptional.hpp"
#include "recbases/higherdeg.hpp"
#include "recbases/kernels.hpp"
#include "recbases/obstruction.hpp"
#include "recbases/recurrence.hpp"
#include "recbases/sumset.hpp"
#include "recbases/witnesses.hpp"

namespace recbases::cli {

using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string out_path, csv_path, config_path, kernel = "auto";
  unsigned threads = 1;
  unsigned max_bits = 0;
  bool timestamp = false;
};

struct Result {
  json body;
  std::string summary;
  std::function<void(std::ostream&)> csv;
};

using Handler = std::function<Result()>;

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument("cli", std::string("invalid JSON: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cli", "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Inline JSON or a path to a JSON file.
std::string json_arg(const std::string& v) {
  auto first = v.find_first_not_of(" \t\n");
  if (first != std::string::npos && v[first] == '{') return v;
  return slurp(v);
}

// Flags from a --config file, appended after the command line so that the
// last-value-wins policy lets the file override.
std::vector<std::string> config_args(const std::string& path) {
  json j = parse_json_text(slurp(path));
  if (j.contains("config") && j["config"].is_object()) j = j["config"];
  if (!j.is_object()) throw InvalidArgument("cli", "config must be a JSON object");
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "command" || it.key() == "config") continue;
    const json& v = it.value();
    std::string flag = "--" + it.key();
    if (v.is_boolean()) {
      out.push_back(flag + "=" + (v.get<bool>() ? "true" : "false"));
    } else if (v.is_string()) {
      out.push_back(flag);
      out.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      out.push_back(flag);
      out.push_back(v.dump());
    } else if (!v.is_null()) {
      throw InvalidArgument("cli", "config key '" + it.key() + "' must be a scalar");
    }
  }
  return out;
}

json echo_config(CLI::App* sub) {
  json c;
  for (const CLI::Option* o : sub->get_options()) {
    std::string name = o->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (o->get_expected_min() == 0) {
      c[name] = o->count() > 0 && o->as<bool>();
    } else if (o->count() > 0) {
      c[name] = o->as<std::string>();
    } else if (!o->get_default_str().empty()) {
      c[name] = o->get_default_str();
    }
  }
  return c;
}

json parsed(const std::string& s) { return json::parse(s); }

Rational rat(const std::string& s) { return parse_rational(s); }

std::pair<long, long> range_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidArgument("cli", "range must read lo,hi");
  try {
    return {std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw InvalidArgument("cli", "range must read lo,hi");
  }
}

std::vector<long> long_list(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string t;
  try {
    while (std::getline(ss, t, ',')) v.push_back(std::stol(t));
  } catch (const std::logic_error&) {
    throw InvalidArgument("cli", "expected a comma-separated integer list");
  }
  return v;
}

struct SpecArgs {
  std::string alpha = "surd:sqrt(2)";
  std::string poly;
  unsigned degree = 2;
  std::string eps = "const:1/10";

  void add(CLI::App* s) {
    s->add_option("--alpha", alpha, "real descriptor")->capture_default_str();
    s->add_option("--poly", poly, "polynomial, overrides --alpha/--degree (e.g. 2=surd:sqrt(2)|0=rat:1/3)");
    s->add_option("--degree", degree, "degree of alpha n^d")->capture_default_str();
    s->add_option("--eps", eps, "epsilon schedule")->capture_default_str();
  }
  Polynomial polynomial() const {
    return poly.empty() ? monomial(RealDescriptor::parse(alpha), degree) : parse_polynomial(poly);
  }
  RecurrenceSetSpec spec() const { return {polynomial(), EpsilonSchedule::parse(eps)}; }
};

std::string join(const std::vector<std::uint64_t>& v, std::size_t max = 40) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size() && i < max; ++i) s << (i ? " " : "") << v[i];
  if (v.size() > max) s << " ...";
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumsets of n^d alpha near the integers: continued fractions, certificates, brute force"};
  app.name("recbases");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  std::map<CLI::App*, Handler> handlers;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", common.out_path, "write the JSON report here");
    s->add_option("--csv", common.csv_path, "write the CSV mirror here");
    s->add_option("--config", common.config_path, "JSON file whose keys override flags");
    s->add_option("--threads", common.threads, "worker threads")->capture_default_str();
    s->add_option("--max-bits", common.max_bits, "precision cap for adaptive refinement");
    s->add_option("--kernel", common.kernel, "bitset kernels: auto, scalar, avx2")->capture_default_str();
    s->add_flag("--timestamp", common.timestamp, "add a timestamp field to the report");
  };

  // expand
  std::string e_alpha;
  std::size_t e_count = 20;
  {
    auto* s = app.add_subcommand("expand", "continued fraction digits");
    s->add_option("--alpha", e_alpha, "real descriptor")->required();
    s->add_option("--count", e_count, "digits after a0")->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      RealDescriptor x = RealDescriptor::parse(e_alpha);
      CFExpansion cf(x);
      cf.extend(e_count);
      Result r;
      r.body["alpha"] = x.serialize();
      r.body["cf"] = cf.to_string(e_count);
      json digits = json::array();
      std::size_t n = cf.terminated() ? std::min(e_count, cf.available()) : e_count;
      for (std::size_t i = 0; i <= n; ++i) digits.push_back(to_string(cf.digit(i)));
      r.body["digits"] = digits;
      r.body["terminated"] = cf.terminated();
      if (auto p = cf.periodicity())
        r.body["periodicity"] = {{"start", p->start}, {"period", p->period}};
      r.summary = r.body["cf"].get<std::string>();
      return r;
    };
  }

  // convergents
  std::string c_alpha;
  std::size_t c_upto = 20;
  {
    auto* s = app.add_subcommand("convergents", "convergents p_n/q_n with error terms");
    s->add_option("--alpha", c_alpha, "real descriptor")->required();
    s->add_option("--upto", c_upto, "last index")->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      RealDescriptor x = RealDescriptor::parse(c_alpha);
      CFExpansion cf(x);
      std::size_t upto = c_upto;
      if (!cf.extend(upto)) upto = cf.available();
      Result r;
      json rows = json::array();
      for (const auto& c : convergents(cf, upto)) {
        json row;
        row["n"] = c.index;
        row["a"] = to_string(cf.digit(static_cast<std::size_t>(c.index)));
        row["p"] = to_string(c.p);
        row["q"] = to_string(c.q);
        if (!(cf.terminated() && static_cast<std::size_t>(c.index) == cf.available())) {
          ErrorTerm e = error_term(x, static_cast<std::size_t>(c.index));
          row["delta_lo"] = to_double_down(e.enclosure.lo());
          row["delta_hi"] = to_double_up(e.enclosure.hi());
        }
        rows.push_back(row);
      }
      r.body["alpha"] = x.serialize();
      r.body["convergents"] = rows;
      r.summary = std::to_string(rows.size()) + " convergents";
      r.csv = [x, upto](std::ostream& o) { write_convergent_csv(o, x, upto); };
      return r;
    };
  }

  // witnesses
  std::string w_alpha = "surd:sqrt(2)", w_family = "pell", w_bound = "8", w_A = "3", w_floor = "10";
  std::size_t w_count = 5, w_scan = 2000;
  std::uint64_t w_verify = 0;
  {
    auto* s = app.add_subcommand("witnesses", "explicit complement witnesses with certificates");
    s->add_option("--alpha", w_alpha, "real descriptor")->capture_default_str();
    s->add_option("--family", w_family, "pell, pell-sqrt2, badapprox or generic")
        ->check(CLI::IsMember({"pell", "pell-sqrt2", "badapprox", "generic"}))
        ->capture_default_str();
    s->add_option("--count", w_count, "number of witnesses")->capture_default_str();
    s->add_option("--digit-bound", w_bound, "badapprox: digit bound of 2 alpha")->capture_default_str();
    s->add_option("--A", w_A, "generic: odd pattern digit")->capture_default_str();
    s->add_option("--scan-limit", w_scan, "generic: digits scanned")->capture_default_str();
    s->add_option("--floor", w_floor, "drop witnesses below this N")->capture_default_str();
    s->add_option("--verify-T", w_verify, "brute-force each certificate with N <= this at eps0_max/2")
        ->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      RealDescriptor x = RealDescriptor::parse(w_alpha);
      WitnessOptions o;
      o.floor = parse_bigint(w_floor);
      std::vector<WitnessRecord> recs;
      if (w_family == "pell-sqrt2") {
        recs = pell_witnesses_sqrt2(w_count, o);
        x = RealDescriptor::surd(0, 1, 1, 2);
      } else if (w_family == "pell") {
        recs = pell_witnesses_surd(x, w_count, o);
      } else if (w_family == "badapprox") {
        recs = badapprox_witnesses(x, w_count, parse_bigint(w_bound), o);
      } else {
        recs = generic_witnesses(x, parse_bigint(w_A), w_count, w_scan, o);
      }
      Result r;
      json arr = json::array();
      std::ostringstream sum;
      for (auto& w : recs) {
        json j = parsed(w.to_json());
        if (w_verify > 0 && w.N <= w_verify) {
          auto v = verify_certificate(w.certificate, w_verify, w.certificate.eps0_max / 2);
          j["certificate"]["verified"] = to_string(v.level);
          j["verification"] = v.detail;
        }
        arr.push_back(j);
        sum << to_string(w.N) << " ";
      }
      r.body["alpha"] = x.serialize();
      r.body["family"] = w_family;
      r.body["witnesses"] = arr;
      r.summary = "N: " + sum.str();
      r.csv = [recs](std::ostream& os) {
        os << "N,family,k,m,eps0_max\n";
        for (const auto& w : recs) {
          os << to_string(w.N) << "," << to_string(w.provenance.family) << "," << w.certificate.k << ","
             << to_string(w.certificate.m) << "," << to_double(w.certificate.eps0_max) << "\n";
        }
      };
      return r;
    };
  }

  // certify
  std::string cf_alpha = "surd:sqrt(2)", cf_N, cf_eps0;
  unsigned long cf_kmax = 8;
  std::uint64_t cf_verify = 0;
  {
    auto* s = app.add_subcommand("certify", "obstruction certificate for N");
    s->add_option("--alpha", cf_alpha, "real descriptor")->capture_default_str();
    s->add_option("--N", cf_N, "odd integer")->required();
    s->add_option("--k-max", cf_kmax, "largest even k tried")->capture_default_str();
    s->add_option("--verify-T", cf_verify, "brute-force when N <= this")->capture_default_str();
    s->add_option("--eps0", cf_eps0, "brute-force epsilon (default eps0_max shrunk by the slack)");
    add_common(s);
    handlers[s] = [&]() {
      RealDescriptor x = RealDescriptor::parse(cf_alpha);
      auto c = certify(x, parse_bigint(cf_N), cf_kmax);
      Result r;
      if (!c) {
        r.body["certificate"] = nullptr;
        r.summary = "no certificate with k <= " + std::to_string(cf_kmax);
        return r;
      }
      if (cf_verify > 0) {
        std::optional<Rational> e;
        if (!cf_eps0.empty()) e = rat(cf_eps0);
        auto v = verify_certificate(*c, cf_verify, e);
        c->verified = v.level;
        r.body["verification"] = v.detail;
      }
      r.body["certificate"] = parsed(c->to_json());
      r.summary = "k=" + std::to_string(c->k) + " m=" + to_string(c->m) + " eps0_max~" +
                  std::to_string(to_double(c->eps0_max));
      return r;
    };
  }

  // sumset
  SpecArgs ss_spec;
  unsigned ss_k = 2;
  std::uint64_t ss_T = 1000;
  std::string ss_bitset, ss_members;
  {
    auto* s = app.add_subcommand("sumset", "k-fold sumset bitmap");
    ss_spec.add(s);
    s->add_option("--k", ss_k, "order")->capture_default_str();
    s->add_option("--T", ss_T, "range [0, T]")->capture_default_str();
    s->add_option("--bitset", ss_bitset, "write the kA bitmap file here");
    s->add_option("--members", ss_members, "write the A bitmap file here");
    add_common(s);
    handlers[s] = [&]() {
      RecurrenceSetSpec spec = ss_spec.spec();
      EnumerateOptions eo;
      eo.threads = common.threads;
      Bitset a = enumerate(spec, ss_T, eo);
      Bitset ka = sumset_bitmap(a, ss_k, common.threads);
      if (!ss_members.empty()) write_bitset_file(ss_members, a, spec.to_json());
      if (!ss_bitset.empty()) write_bitset_file(ss_bitset, ka, spec.to_json());
      Result r;
      r.body["spec"] = parsed(spec.to_json());
      r.body["k"] = ss_k;
      r.body["T"] = ss_T;
      r.body["members"] = a.count();
      r.body["sumset_count"] = ka.count();
      r.summary = std::to_string(a.count()) + " members, |kA ∩ [0,T]| = " + std::to_string(ka.count());
      r.csv = [ka](std::ostream& o) { write_members_csv(o, ka); };
      return r;
    };
  }

  // complement
  SpecArgs co_spec;
  unsigned co_k = 2;
  std::uint64_t co_T = 1000;
  bool co_verify = false;
  {
    auto* s = app.add_subcommand("complement", "[1, T] minus kA");
    co_spec.add(s);
    s->add_option("--k", co_k, "order")->capture_default_str();
    s->add_option("--T", co_T, "range")->capture_default_str();
    s->add_flag("--verify", co_verify, "re-check every element by direct decomposition search");
    add_common(s);
    handlers[s] = [&]() {
      SumsetOptions o;
      o.threads = common.threads;
      o.verify = co_verify;
      SumsetReport rep = complement(co_spec.spec(), co_k, co_T, o);
      Result r;
      r.body = parsed(rep.to_json());
      r.summary = std::to_string(rep.complement.size()) + " elements: " + join(rep.complement);
      r.csv = [rep](std::ostream& os) { rep.write_csv(os); };
      return r;
    };
  }

  // exceptional
  std::string ex_plan, ex_eps0 = "1/10";
  std::size_t ex_count = 200;
  unsigned long ex_p = 3;
  std::uint64_t ex_T = 0, ex_window = 50;
  {
    auto* s = app.add_subcommand("exceptional", "alpha whose A is a basis of order 2");
    s->add_option("--plan", ex_plan, "plan: compact form, inline JSON or JSON file (default plan if empty)");
    s->add_option("--count", ex_count, "digits")->capture_default_str();
    s->add_option("--p", ex_p, "odd prime for the condition tables")->capture_default_str();
    s->add_option("--basis-T", ex_T, "brute-force 2A complement up to T (0 skips)")->capture_default_str();
    s->add_option("--eps0", ex_eps0, "basis check epsilon")->capture_default_str();
    s->add_option("--window-start", ex_window, "tail window start for the basis check")->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      ExceptionalAlphaPlan plan;
      if (!ex_plan.empty()) {
        auto first = ex_plan.find_first_not_of(' ');
        if (first != std::string::npos && ex_plan[first] == '{')
          plan = ExceptionalAlphaPlan::from_json(ex_plan);
        else if (ex_plan.find('=') != std::string::npos)
          plan = ExceptionalAlphaPlan::from_compact(ex_plan);
        else
          plan = ExceptionalAlphaPlan::from_json(slurp(ex_plan));
      }
      RealDescriptor x = construct_exceptional(plan, ex_count);
      ConditionsReport cond = verify_conditions(x, ex_count, ex_p, plan);
      GrowthProfile gp = growth_profile(x, ex_count);
      Result r;
      r.body["plan"] = parsed(plan.to_json());
      r.body["alpha"] = x.serialize();
      CFExpansion cf(x);
      r.body["cf"] = cf.to_string(ex_count);
      json cj = parsed(cond.to_json());
      cj.erase("rows");
      r.body["conditions"] = cj;
      r.body["growth"] = {{"early_max", gp.early_max}, {"late_max", gp.late_max}, {"decaying", gp.decaying}};
      std::string summary = std::string("conditions ") + to_string(cond.status);
      if (ex_T > 0) {
        BasisReport b = basis_check(x, rat(ex_eps0), ex_T, common.threads);
        json bj = parsed(b.to_json());
        std::vector<std::uint64_t> tail;
        for (auto v : b.complement)
          if (v >= ex_window) tail.push_back(v);
        bj["window_start"] = ex_window;
        bj["window_complement"] = tail;
        bj["window_empty"] = tail.empty();
        r.body["basis"] = bj;
        summary += "; complement in [" + std::to_string(ex_window) + ", T]: " + (tail.empty() ? "empty" : join(tail));
      }
      r.summary = summary;
      r.csv = [cond](std::ostream& os) {
        os << "i,a_i,nu2_q,nup_q,nu2_a,nup_a\n";
        for (const auto& row : cond.rows)
          os << row.i << "," << to_string(row.a) << "," << row.v2_q << "," << row.vp_q << "," << row.v2_a << ","
             << row.vp_a << "\n";
      };
      return r;
    };
  }

  // equidist
  SpecArgs eq_spec;
  std::string eq_mode = "verdict", eq_eps0 = "1/10", eq_delta = "1/20", eq_freq = "1", eq_krange = "-4,4",
              eq_lrange = "-4,4";
  std::uint64_t eq_N = 1000;
  long eq_cap = 8;
  {
    auto* s = app.add_subcommand("equidist", "orbit hits, Weyl sums, verdicts, smoothness norms");
    eq_spec.add(s);
    s->add_option("--mode", eq_mode, "orbit, weyl, verdict or smoothness")
        ->check(CLI::IsMember({"orbit", "weyl", "verdict", "smoothness"}))
        ->capture_default_str();
    s->add_option("--N", eq_N, "length / target")->capture_default_str();
    s->add_option("--eps0", eq_eps0, "orbit: epsilon")->capture_default_str();
    s->add_option("--delta", eq_delta, "verdict threshold")->capture_default_str();
    s->add_option("--freq", eq_freq, "weyl: frequency per term, comma separated")->capture_default_str();
    s->add_option("--freq-cap", eq_cap, "verdict: max |k_t|")->capture_default_str();
    s->add_option("--k-range", eq_krange, "smoothness: lo,hi")->capture_default_str();
    s->add_option("--l-range", eq_lrange, "smoothness: lo,hi")->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      Result r;
      Polynomial p = eq_spec.polynomial();
      r.body["poly"] = serialize_polynomial(p);
      r.body["N"] = eq_N;
      if (eq_mode == "orbit") {
        if (p.size() != 1 || p[0].degree != 2) throw InvalidArgument("cli", "orbit mode needs alpha n^2");
        auto h = orbit_hits(p[0].coeff, eq_N, rat(eq_eps0));
        r.body["hit"] = h ? json(*h) : json(nullptr);
        r.summary = h ? "hit at n = " + std::to_string(*h) : "no hit";
      } else if (eq_mode == "weyl") {
        WeylSum w = weyl_sum(p, long_list(eq_freq), eq_N);
        r.body["freq"] = long_list(eq_freq);
        r.body["magnitude"] = w.magnitude;
        r.body["error_bound"] = w.error_bound;
        r.body["phase_bits"] = w.phase_bits;
        r.summary = "|S|/N = " + std::to_string(w.magnitude);
      } else if (eq_mode == "verdict") {
        Verdict v = equidist_verdict(p, eq_N, rat(eq_delta), eq_cap);
        r.body["verdict"] = parsed(v.to_json());
        r.summary = v.obstruction ? "obstruction" : "looks equidistributed";
        std::vector<std::vector<long>> fs = frequency_order(p.size(), eq_cap);
        r.csv = [p, fs, N = eq_N](std::ostream& os) {
          os << "freq,magnitude\n";
          for (const auto& f : fs) {
            std::ostringstream k;
            for (std::size_t i = 0; i < f.size(); ++i) k << (i ? " " : "") << f[i];
            os << k.str() << "," << weyl_sum(p, f, N).magnitude << "\n";
          }
        };
      } else {
        auto entries = smoothness_obstruction(p, eq_N, range_arg(eq_krange), range_arg(eq_lrange));
        json arr = json::array();
        for (std::size_t i = 0; i < entries.size() && i < 20; ++i) {
          const auto& e = entries[i];
          arr.push_back({{"k", e.k},
                         {"l", e.l},
                         {"norm", to_double(e.norm.value.midpoint())},
                         {"leading", to_double(e.leading.midpoint())},
                         {"subleading", to_double(e.subleading.midpoint())}});
        }
        r.body["smallest"] = arr;
        r.summary = entries.empty() ? "no pairs"
                                    : "smallest norm at (k,l) = (" + std::to_string(entries[0].k) + "," +
                                          std::to_string(entries[0].l) + ")";
      }
      return r;
    };
  }

  // gamma
  GammaParams gp;
  std::string g_ratio = "4", g_n1 = "11", g_verify_eps, g_survey_eps = "const:1/5";
  std::uint64_t g_survey_T = 0;
  {
    auto* s = app.add_subcommand("gamma", "nested-interval alpha for degree d >= 3");
    s->add_option("--d", gp.d, "degree")->capture_default_str();
    s->add_option("--bits", gp.branch_bits, "branch bits, one per level");
    s->add_option("--levels", gp.levels, "levels")->capture_default_str();
    s->add_option("--n1", g_n1, "first odd N")->capture_default_str();
    s->add_option("--ratio", g_ratio, "N_{i+1} >= ratio N_i^(d+1)")->capture_default_str();
    s->add_option("--verify-eps0", g_verify_eps, "brute-force N_1 at this epsilon");
    s->add_option("--survey-T", g_survey_T, "2A complement of alpha n^d up to T (0 skips)")->capture_default_str();
    s->add_option("--survey-eps", g_survey_eps, "survey epsilon schedule")->capture_default_str();
    add_common(s);
    handlers[s] = [&]() {
      gp.N1 = parse_bigint(g_n1);
      gp.ratio = rat(g_ratio);
      GammaConstruction g = gamma_construct(gp);
      Result r;
      r.body["construction"] = parsed(g.to_json());
      r.body["constraints_hold"] = gamma_constraints_hold(g);
      std::string summary = "N_1 = " + to_string(g.levels[0].N);
      if (!g_verify_eps.empty()) {
        HighDegOutcome o = verify_highdeg_witness(g.alpha, g.levels[0].N, gp.d, rat(g_verify_eps));
        r.body["verification"] = parsed(o.to_json());
        summary += std::string("; ") + to_string(o.outcome.level);
      }
      if (g_survey_T > 0) {
        SumsetReport rep =
            complement_survey_highdeg(g.alpha, gp.d, EpsilonSchedule::parse(g_survey_eps), g_survey_T, 2, common.threads);
        r.body["survey"] = parsed(rep.to_json());
        summary += "; complement " + join(rep.complement);
      }
      r.summary = summary;
      return r;
    };
  }

  // trichotomy
  std::string t_base, t_dirs;
  {
    auto* s = app.add_subcommand("trichotomy", "classify an affine family of polynomials");
    s->add_option("--base", t_base, "base polynomial (empty for zero)");
    s->add_option("--directions", t_dirs, "direction polynomials separated by ';'")->required();
    add_common(s);
    handlers[s] = [&]() {
      AffineFamilySpec f;
      if (!t_base.empty()) f.base = parse_polynomial(t_base);
      std::stringstream ss(t_dirs);
      std::string d;
      while (std::getline(ss, d, ';'))
        if (!d.empty()) f.directions.push_back(parse_polynomial(d));
      Trichotomy t = family_trichotomy(f);
      Result r;
      r.body["class"] = to_string(t);
      r.summary = to_string(t);
      return r;
    };
  }

  // verify
  std::string v_cert, v_eps0;
  std::uint64_t v_T = 10000;
  {
    auto* s = app.add_subcommand("verify", "re-check an obstruction certificate");
    s->add_option("--cert", v_cert, "certificate JSON (inline or file)")->required();
    s->add_option("--T-check", v_T, "brute-force when N <= this")->capture_default_str();
    s->add_option("--eps0", v_eps0, "brute-force epsilon");
    add_common(s);
    handlers[s] = [&]() {
      json j = parse_json_text(json_arg(v_cert));
      if (j.contains("result")) j = j["result"];
      if (j.contains("certificate")) j = j["certificate"];
      ObstructionCertificate c = ObstructionCertificate::from_json(j.dump());
      std::optional<Rational> e;
      if (!v_eps0.empty()) e = rat(v_eps0);
      VerificationOutcome v = verify_certificate(c, v_T, e);
      Result r;
      r.body["verified"] = to_string(v.level);
      r.body["detail"] = v.detail;
      r.summary = std::string(to_string(v.level)) + ": " + v.detail;
      return r;
    };
  }

  // splice in --config values
  std::vector<std::string> args = raw_args;
  for (std::size_t i = 0; i < raw_args.size(); ++i) {
    std::string path;
    if (raw_args[i] == "--config" && i + 1 < raw_args.size()) path = raw_args[i + 1];
    if (raw_args[i].rfind("--config=", 0) == 0) path = raw_args[i].substr(9);
    if (!path.empty()) {
      try {
        auto extra = config_args(path);
        args.insert(args.end(), extra.begin(), extra.end());
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (common.max_bits > 0) precision_policy().max_bits = common.max_bits;
    if (!kernels::select(common.kernel)) throw InvalidArgument("cli", "kernel '" + common.kernel + "' unavailable");
    Result r = handlers.at(sub)();
    json report;
    report["command"] = sub->get_name();
    report["config"] = echo_config(sub);
    if (common.timestamp) {
      std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
      report["timestamp"] = buf;
    }
    report["result"] = r.body;
    if (!common.csv_path.empty()) {
      if (!r.csv) throw InvalidArgument("cli", sub->get_name() + " has no CSV output");
      std::ofstream f(common.csv_path);
      if (!f) throw InvalidArgument("cli", "cannot write '" + common.csv_path + "'");
      r.csv(f);
    }
    if (!common.out_path.empty()) {
      std::ofstream f(common.out_path);
      if (!f) throw InvalidArgument("cli", "cannot write '" + common.out_path + "'");
      f << report.dump(2) << "\n";
      out << r.summary << "\n";
    } else {
      out << report.dump(2) << "\n";
      err << r.summary << "\n";
    }
    return 0;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "error: cli: malformed JSON input: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace recbases::cli

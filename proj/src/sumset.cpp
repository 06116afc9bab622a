#include "recbases/sumset.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "recbases/errors.hpp"
#include "recbases/kernels.hpp"

namespace recbases {

namespace {

// Per-N test: N in X + Y iff some n <= N has X[n] and Y[N - n]. With
// R = reverse(Y) over [0, T], Y[N - n] = R[T - N + n].
void dense_range(const Bitset& x, const Bitset& r, Bitset& out, std::size_t lo, std::size_t hi) {
  const auto& k = kernels::active();
  const std::size_t T = x.size() - 1;
  for (std::size_t N = lo; N <= hi; ++N)
    if (k.any_and_offset(x.data(), r.data(), N + 1, T - N)) out.set(N);
}

}  // namespace

Bitset pair_sum(const Bitset& x, const Bitset& y, unsigned threads) {
  if (x.size() != y.size()) throw InvalidArgument("sumset", "bitset size mismatch");
  if (x.size() == 0) return Bitset(0);
  const std::size_t T = x.size() - 1;
  Bitset out(x.size());
  const Bitset& sparse = x.count() < y.count() ? x : y;
  const Bitset& other = &sparse == &x ? y : x;
  if (sparse.count() <= x.size() / 64) {
    const auto& k = kernels::active();
    for (auto s : sparse.members()) k.or_shifted(out.data(), other.data(), out.words(), s);
    out.clear_tail();
    return out;
  }
  Bitset r = y.reversed();
  unsigned nt = std::max(1u, threads);
  if (nt == 1) {
    dense_range(x, r, out, 0, T);
    return out;
  }
  // split on word boundaries so threads never share an output word
  std::size_t words = out.words();
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) {
    std::size_t wlo = words * t / nt, whi = words * (t + 1) / nt;
    if (wlo == whi) continue;
    std::size_t lo = wlo * 64, hi = std::min(T, whi * 64 - 1);
    pool.emplace_back([&, lo, hi] { dense_range(x, r, out, lo, hi); });
  }
  for (auto& th : pool) th.join();
  return out;
}

Bitset sumset_bitmap(const Bitset& members, unsigned k, unsigned threads) {
  if (k < 1) throw InvalidArgument("sumset", "k must be >= 1");
  Bitset acc = members;
  for (unsigned i = 1; i < k; ++i) acc = pair_sum(acc, members, threads);
  return acc;
}

std::vector<GapStat> gap_stats(const std::vector<std::uint64_t>& c) {
  std::vector<GapStat> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    GapStat g;
    g.N = c[i];
    g.next = c[i + 1];
    g.diff = g.next - g.N;
    g.relative = static_cast<double>(g.diff) / static_cast<double>(g.N);
    g.ratio = static_cast<double>(g.next) / static_cast<double>(g.N);
    out.push_back(g);
  }
  return out;
}

std::map<std::uint64_t, std::size_t> counts_at(const std::vector<std::uint64_t>& c, std::uint64_t T) {
  std::map<std::uint64_t, std::size_t> out;
  std::vector<std::uint64_t> marks;
  for (std::uint64_t p = 10; p <= T; p *= 10) {
    marks.push_back(p);
    if (p > UINT64_MAX / 10) break;
  }
  marks.push_back(T);
  for (auto m : marks) {
    std::size_t n = 0;
    for (auto v : c)
      if (v <= m) ++n;
    out[m] = n;
  }
  return out;
}

std::vector<std::uint64_t> find_decomposition(std::uint64_t N, unsigned k,
                                              const std::function<bool(std::uint64_t)>& member) {
  if (k == 0) return {};
  if (k == 1) return member(N) ? std::vector<std::uint64_t>{N} : std::vector<std::uint64_t>{};
  // parts in non-decreasing order: n_1 <= N / k
  std::vector<std::uint64_t> parts;
  std::function<bool(std::uint64_t, unsigned, std::uint64_t)> rec = [&](std::uint64_t rest, unsigned left,
                                                                       std::uint64_t lo) -> bool {
    if (left == 1) {
      if (rest >= lo && member(rest)) {
        parts.push_back(rest);
        return true;
      }
      return false;
    }
    for (std::uint64_t n = lo; n * left <= rest; ++n) {
      if (!member(n)) continue;
      parts.push_back(n);
      if (rec(rest - n, left - 1, n)) return true;
      parts.pop_back();
    }
    return false;
  };
  if (rec(N, k, 0)) return parts;
  return {};
}

SumsetReport complement_from_members(const Bitset& members, unsigned k, const std::string& spec_json) {
  SumsetReport rep;
  rep.spec_json = spec_json;
  rep.k = k;
  rep.T = members.size() - 1;
  rep.members = members.count();
  Bitset s = sumset_bitmap(members, k);
  for (std::uint64_t N = 1; N <= rep.T; ++N)
    if (!s.test(N)) rep.complement.push_back(N);
  rep.counts_at = counts_at(rep.complement, rep.T);
  rep.gaps = gap_stats(rep.complement);
  return rep;
}

SumsetReport complement(const RecurrenceSetSpec& spec, unsigned k, std::uint64_t T, const SumsetOptions& opts) {
  EnumerateOptions eo;
  eo.threads = opts.threads;
  Bitset members = enumerate(spec, T, eo);
  SumsetReport rep;
  rep.spec_json = spec.to_json();
  rep.k = k;
  rep.T = T;
  rep.members = members.count();
  Bitset s = sumset_bitmap(members, k, opts.threads);
  for (std::uint64_t N = 1; N <= T; ++N)
    if (!s.test(N)) rep.complement.push_back(N);
  rep.counts_at = counts_at(rep.complement, T);
  rep.gaps = gap_stats(rep.complement);
  if (opts.verify) {
    std::vector<signed char> memo(static_cast<std::size_t>(T) + 1, -1);
    auto member = [&](std::uint64_t n) {
      signed char& m = memo[n];
      if (m < 0) m = contains(spec, n) ? 1 : 0;
      return m == 1;
    };
    for (auto N : rep.complement) {
      auto parts = find_decomposition(N, k, member);
      if (!parts.empty()) {
        std::ostringstream os;
        os << "complement element " << N << " decomposes directly";
        for (auto p : parts) os << " " << p;
        throw Error("sumset", os.str());
      }
    }
    rep.verified = true;
  }
  return rep;
}

std::string SumsetReport::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = nlohmann::ordered_json::parse(spec_json.empty() ? "null" : spec_json);
  j["k"] = k;
  j["T"] = T;
  j["members"] = members;
  j["complement"] = complement;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [t, n] : counts_at) c[std::to_string(t)] = n;
  j["counts_at"] = c;
  nlohmann::ordered_json g = nlohmann::ordered_json::array();
  for (const auto& s : gaps) g.push_back({s.N, s.next, s.ratio});
  j["gaps"] = g;
  j["verified"] = verified;
  return j.dump(2);
}

void SumsetReport::write_csv(std::ostream& out) const {
  out << "N\n";
  for (auto v : complement) out << v << "\n";
}

}  // namespace recbases

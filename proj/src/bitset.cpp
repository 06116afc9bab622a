#include "recbases/bitset.hpp"

#include <bit>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "recbases/errors.hpp"

namespace recbases {

std::size_t max_bitset_bytes() {
  const char* env = std::getenv("RECBASES_MAX_MEM");
  std::size_t fallback = std::size_t{4} << 30;
  if (!env || !*env) return fallback;
  std::string s(env);
  std::size_t mult = 1;
  char last = static_cast<char>(std::toupper(static_cast<unsigned char>(s.back())));
  if (last == 'K' || last == 'M' || last == 'G') {
    mult = last == 'K' ? (std::size_t{1} << 10) : last == 'M' ? (std::size_t{1} << 20) : (std::size_t{1} << 30);
    s.pop_back();
  }
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') throw InvalidArgument("sumset", "RECBASES_MAX_MEM is not a byte count: " + std::string(env));
  return static_cast<std::size_t>(v) * mult;
}

Bitset::Bitset(std::size_t nbits) : nbits_(nbits) {
  std::size_t bytes = (words() + 1) * sizeof(std::uint64_t);
  if (bytes > max_bitset_bytes()) {
    throw ResourceLimit("sumset", "bitset of " + std::to_string(nbits) + " bits exceeds RECBASES_MAX_MEM (" +
                                      std::to_string(max_bitset_bytes()) + " bytes)");
  }
  bits_.assign(words() + 1, 0);
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words(); ++i) c += static_cast<std::size_t>(std::popcount(bits_[i]));
  return c;
}

std::vector<std::uint64_t> Bitset::members() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < words(); ++w) {
    std::uint64_t v = bits_[w];
    while (v) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(v)));
      v &= v - 1;
    }
  }
  return out;
}

Bitset Bitset::reversed() const {
  Bitset r(nbits_);
  for (std::size_t w = 0; w < words(); ++w) {
    std::uint64_t v = bits_[w];
    while (v) {
      std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(v));
      r.set(nbits_ - 1 - i);
      v &= v - 1;
    }
  }
  return r;
}

void Bitset::clear_tail() {
  std::size_t w = words();
  if (nbits_ & 63) bits_[w - 1] &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
  bits_[w] = 0;
}

bool Bitset::is_subset_of(const Bitset& other) const {
  if (other.nbits_ != nbits_) throw InvalidArgument("sumset", "bitset size mismatch");
  for (std::size_t i = 0; i < words(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

void write_bitset_file(const std::string& path, const Bitset& bits, const std::string& spec_json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("sumset", "cannot open " + path + " for writing");
  out << "RECBASES-BITSET 1\n";
  out << "{\"spec\":" << spec_json << ",\"T\":" << (bits.size() ? bits.size() - 1 : 0) << ",\"count\":" << bits.count()
      << ",\"words\":" << bits.words() << "}\n";
  for (std::size_t i = 0; i < bits.words(); ++i) {
    std::uint64_t v = bits.data()[i];
    unsigned char buf[8];
    for (int k = 0; k < 8; ++k) buf[k] = static_cast<unsigned char>(v >> (8 * k));
    out.write(reinterpret_cast<const char*>(buf), 8);
  }
}

Bitset read_bitset_file(const std::string& path, std::string* spec_json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("sumset", "cannot open " + path);
  std::string magic, header;
  std::getline(in, magic);
  std::getline(in, header);
  if (magic != "RECBASES-BITSET 1") throw InvalidArgument("sumset", path + " is not a bitset file");
  auto field = [&](const std::string& key) -> unsigned long long {
    std::string pat = "\"" + key + "\":";
    std::size_t at = header.rfind(pat);
    if (at == std::string::npos) throw InvalidArgument("sumset", "bitset header lacks " + key);
    return std::strtoull(header.c_str() + at + pat.size(), nullptr, 10);
  };
  std::size_t T = field("T");
  Bitset b(T + 1);
  for (std::size_t i = 0; i < b.words(); ++i) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw InvalidArgument("sumset", path + " is truncated");
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(buf[k]) << (8 * k);
    b.data()[i] = v;
  }
  b.clear_tail();
  if (spec_json) {
    std::size_t s = header.find("\"spec\":");
    std::size_t e = header.rfind(",\"T\":");
    *spec_json = (s == std::string::npos || e == std::string::npos) ? "" : header.substr(s + 7, e - s - 7);
  }
  return b;
}

void write_members_csv(std::ostream& out, const Bitset& bits) {
  out << "n\n";
  for (auto n : bits.members()) out << n << "\n";
}

}  // namespace recbases

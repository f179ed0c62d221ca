#include "lowdefect/complexity.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace lowdefect {

namespace {

constexpr std::uint8_t kUnset = 0xFF;
constexpr char kMagic[4] = {'I', 'C', 'X', '1'};
constexpr std::uint8_t kVersion = 0x01;

// Conservative cap on the smaller addend of a sum split, given an upper
// bound u on ||n||.  Rounded up with a +1 margin so float error can only
// widen the scan.
std::uint64_t sum_cap(unsigned u, std::uint64_t n) {
  static const long double log3 = std::log(3.0L);
  long double defect_bound = static_cast<long double>(u) - 3.0L * std::log((long double)n) / log3;
  if (defect_bound < 0) defect_bound = 0;
  long double cap = 2.0L * std::exp(defect_bound / 3.0L * log3);
  return static_cast<std::uint64_t>(cap) + 1;
}

}  // namespace

ComplexityTable ComplexityTable::build(std::uint64_t limit, const BuildParams& params) {
  if (limit < 1) throw Error(Error::Kind::Domain, "table limit must be at least 1");
  std::vector<std::uint8_t> e(limit, kUnset);
  e[0] = 1;  // ||1|| = 1

  // best[m] (stored in e[m-1]) accumulates product-split bounds pushed
  // forward from smaller factors before m's own pass finalizes it.
  for (std::uint64_t m = 2; m <= limit; ++m) {
    unsigned u = static_cast<unsigned>(e[m - 2]) + 1;  // split m = (m-1) + 1
    if (e[m - 1] != kUnset && e[m - 1] < u) u = e[m - 1];

    std::uint64_t cap = params.sum_cap_override ? *params.sum_cap_override : sum_cap(u, m);
    if (cap > m / 2) cap = m / 2;
    for (std::uint64_t a = 2; a <= cap; ++a) {
      unsigned s = static_cast<unsigned>(e[a - 1]) + static_cast<unsigned>(e[m - a - 1]);
      if (s < u) u = s;
    }

    if (u >= kUnset)
      throw Error(Error::Kind::Build, "complexity entry exceeds one-byte storage");
    e[m - 1] = static_cast<std::uint8_t>(u);

    // Push product splits m*f for f <= m; both factors are final here.
    std::uint64_t fmax = limit / m;
    if (fmax > m) fmax = m;
    for (std::uint64_t f = 2; f <= fmax; ++f) {
      std::uint64_t prod = m * f;
      unsigned s = static_cast<unsigned>(e[m - 1]) + static_cast<unsigned>(e[f - 1]);
      if (s < e[prod - 1]) e[prod - 1] = static_cast<std::uint8_t>(s);
    }
  }
  return ComplexityTable(std::move(e), params);
}

void ComplexityTable::save(std::ostream& out) const {
  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  std::uint64_t n = entries_.size();
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((n >> (8 * i)) & 0xFF);
  out.write(buf, 8);
  out.write(reinterpret_cast<const char*>(entries_.data()),
            static_cast<std::streamsize>(entries_.size()));
  if (!out) throw Error(Error::Kind::Io, "failed to write table");
}

void ComplexityTable::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Kind::Io, "cannot open " + path.string() + " for writing");
  save(out);
}

ComplexityTable ComplexityTable::load(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(Error::Kind::Parse, "not a complexity table file (bad magic)");
  int version = in.get();
  if (version != kVersion)
    throw Error(Error::Kind::Parse, "unsupported table version " + std::to_string(version));
  char buf[8];
  in.read(buf, 8);
  if (!in) throw Error(Error::Kind::Parse, "truncated table header");
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
  if (n < 1) throw Error(Error::Kind::Parse, "table limit in file is zero");
  std::vector<std::uint8_t> e(n);
  in.read(reinterpret_cast<char*>(e.data()), static_cast<std::streamsize>(n));
  if (!in || static_cast<std::uint64_t>(in.gcount()) != n)
    throw Error(Error::Kind::Parse, "truncated table body");
  if (e[0] != 1) throw Error(Error::Kind::Parse, "corrupt table: ||1|| != 1");
  return ComplexityTable(std::move(e), {});
}

ComplexityTable ComplexityTable::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Io, "cannot open " + path.string());
  return load(in);
}

}  // namespace lowdefect

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lowdefect/errors.hpp"

namespace lowdefect {

// Table of integer complexities ||n|| for 1 <= n <= limit.  ||n|| is the
// least number of 1s needed to write n using + and * with arbitrary
// parenthesization.  Entries are one byte each; immutable once built.
class ComplexityTable {
 public:
  struct BuildParams {
    // Testing hook: replaces the derived cap on the smaller addend of sum
    // splits.  The default cap is A(n) = ceil(2 * 3^((U - 3 log3 n)/3)),
    // where U is the best upper bound on ||n|| known from ||n-1||+1 and
    // product splits; any optimal sum split n = a+b with a <= b satisfies
    // a <= A(n) because 3 log3 a <= ||a|| = ||n|| - ||b|| <= U - 3 log3(n/2).
    std::optional<std::uint64_t> sum_cap_override;
  };

  static ComplexityTable build(std::uint64_t limit, const BuildParams& params = {});

  std::uint64_t limit() const noexcept { return entries_.size(); }

  // ||n||; throws Error(Range) outside [1, limit].
  unsigned complexity(std::uint64_t n) const {
    if (n < 1 || n > entries_.size())
      throw Error(Error::Kind::Range,
                  "complexity query " + std::to_string(n) + " outside table limit " +
                      std::to_string(entries_.size()));
    return entries_[n - 1];
  }

  const BuildParams& build_params() const noexcept { return params_; }
  const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

  // Binary cache: magic "ICX1", version byte 0x01, little-endian u64 limit,
  // then `limit` bytes with byte i-1 = ||i||.
  void save(std::ostream& out) const;
  void save_file(const std::filesystem::path& path) const;
  static ComplexityTable load(std::istream& in);
  static ComplexityTable load_file(const std::filesystem::path& path);

 private:
  ComplexityTable(std::vector<std::uint8_t> entries, BuildParams params)
      : entries_(std::move(entries)), params_(std::move(params)) {}

  std::vector<std::uint8_t> entries_;
  BuildParams params_;
};

}  // namespace lowdefect

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowdefect/pair.hpp"
#include "lowdefect/truncation.hpp"

namespace lowdefect {

struct CoveringEntry {
  LowDefectPair pair;
  // Provenance only: the pattern this pair came from when the covering was
  // produced by a truncation (relative to the input pair's variables).
  std::optional<SubstitutionPattern> origin;
};

// Finite family of low-defect pairs with threshold metadata.  Entries are
// kept sorted by (canonical witness tree, C) and exact duplicates are
// dropped, so serialization is canonical and round-trips bit-exactly.
class CoveringSet {
 public:
  CoveringSet(std::vector<CoveringEntry> entries, Threshold threshold, std::string provenance);

  const std::vector<CoveringEntry>& entries() const noexcept { return entries_; }
  const Threshold& threshold() const noexcept { return threshold_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<CoveringEntry> entries_;
  Threshold threshold_;
  std::string provenance_;
};

// One constant pair (n, ||n||) per leader n <= table.limit whose defect the
// threshold admits.  Only thresholds below 1 are accepted: that is the
// regime where the leader set is known to be finite, so a table scan is an
// honest base case ("empirical up to limit").
CoveringSet base_covering(const Threshold& threshold, const ComplexityTable& table);

struct Expansion {
  std::uint64_t value;                       // f(3^k1..3^kr) * 3^k_{r+1}
  unsigned long long supposed_complexity;    // min C + 3*sum(k) over representations
};

// Every value representable by an augmented member polynomial up to the
// limit, sorted; monotonicity of f in each variable prunes the search.
std::vector<Expansion> expand(const CoveringSet& covering, std::uint64_t limit);

struct VerificationReport {
  std::uint64_t checked_limit = 0;
  std::vector<std::uint64_t> missing;  // admitted numbers (or leaders) not represented
  std::vector<std::pair<std::uint64_t, unsigned long long>> inefficient;  // (n, best supposed)
  std::vector<std::uint64_t> extraneous;  // represented but not admitted
  bool pass = false;                       // all three lists empty
};

// {n <= limit : threshold admits delta(n)} versus the expansion: extraneous
// and missing members are listed exhaustively (never aborts early).
VerificationReport verify_exact_representation(const CoveringSet& covering,
                                               const Threshold& threshold, std::uint64_t limit,
                                               const ComplexityTable& table);

// Every leader below the threshold must be represented with supposed
// complexity equal to its true complexity.
VerificationReport verify_efficient_covering(const CoveringSet& covering,
                                             const Threshold& threshold, std::uint64_t limit,
                                             const ComplexityTable& table);

// Truncates every member to the threshold and unions the results.
CoveringSet truncate_covering(const CoveringSet& covering, const Threshold& threshold);

// UTF-8 s-expression file:
//   (cover (threshold "48/25") (mode strict)
//          (pair (C 4) [(pattern 0 *)] (tree (node 1 (edge 1 (node 2))))) ...)
// Unknown atoms are parse errors; a pair with C below its tree's complexity
// is rejected.
CoveringSet load_covering(std::istream& in);
CoveringSet load_covering_file(const std::filesystem::path& path);
void save_covering(const CoveringSet& covering, std::ostream& out);
void save_covering_file(const CoveringSet& covering, const std::filesystem::path& path);

}  // namespace lowdefect

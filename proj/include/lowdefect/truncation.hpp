#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lowdefect/defect.hpp"
#include "lowdefect/pair.hpp"

namespace lowdefect {

struct SExpr;

// Tuple over (nonnegative integer | *), one entry per variable of the pair
// it is applied to.  S(pattern) = the tuples matching it, stars free.
class SubstitutionPattern {
 public:
  SubstitutionPattern() = default;
  explicit SubstitutionPattern(std::vector<std::optional<std::uint64_t>> entries)
      : entries_(std::move(entries)) {}
  static SubstitutionPattern all_stars(unsigned arity) {
    return SubstitutionPattern(std::vector<std::optional<std::uint64_t>>(arity));
  }

  const std::vector<std::optional<std::uint64_t>>& entries() const noexcept { return entries_; }
  unsigned arity() const noexcept { return static_cast<unsigned>(entries_.size()); }
  bool all_star() const;
  std::uint64_t fixed_sum() const;

  bool matches(std::span<const std::uint64_t> tuple) const;

  std::string to_string() const;  // "(pattern 0 *)"
  static SubstitutionPattern from_sexpr_node(const SExpr& node);

  friend bool operator==(const SubstitutionPattern& a, const SubstitutionPattern& b) = default;
  friend bool operator<(const SubstitutionPattern& a, const SubstitutionPattern& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<std::optional<std::uint64_t>> entries_;
};

// S(pattern) intersected with the box [0, box_bound]^arity, in
// lexicographic order.  A fixed entry above the bound empties the result.
std::vector<std::vector<std::uint64_t>> pattern_members(const SubstitutionPattern& pattern,
                                                        std::uint64_t box_bound);

// Substitutes 3^k into a variable that is minimal in the nesting order
// (a leaf of the witness tree): the leaf folds into its parent's label as
// parent * (leaf * 3^k + edge), C grows by 3k, and the remaining variables
// are renumbered densely preserving order.
LowDefectPair direct_truncate(const LowDefectPair& p, unsigned variable, std::uint64_t k);

// Iterated direct truncation of every fixed entry; the fixed set must be
// downward closed in the nesting order.  Any admissible order yields the
// same pair; C grows by 3 * (sum of fixed entries).
LowDefectPair substitute(const LowDefectPair& p, const SubstitutionPattern& pattern);

// Smallest K such that the probe tuple (K+1 at every minimal variable, 0
// elsewhere) has point defect >= threshold (strict mode; > in closed
// mode).  Requires degree >= 1 and threshold < delta(f, C).
std::uint64_t find_K(const LowDefectPair& p, const Threshold& threshold);

struct TruncationResult {
  std::vector<SubstitutionPattern> patterns;
  std::vector<LowDefectPair> pairs;  // pairs[i] = substitution of patterns[i]
  Threshold threshold;
};

// Truncation to a defect: the union of S(pattern) over the result equals
// {k : delta_{f,C}(k) < t} (<= t in closed mode), each fixed set is
// downward closed, and every emitted pair (g, D) has delta(g, D) <= t,
// strictly when deg g = 0 in strict mode.  Total; duplicates removed.
TruncationResult truncate_pair(const LowDefectPair& p, const Threshold& threshold);

}  // namespace lowdefect

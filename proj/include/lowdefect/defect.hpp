#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lowdefect/arith.hpp"
#include "lowdefect/complexity.hpp"

namespace lowdefect {

// Exact representation of the real number m - 3*log3(v) for an integer m
// (the count of 1s; may go negative in intermediate arithmetic) and an
// arbitrary-precision integer v >= 1.  Ordering and equality are decided
// with integer arithmetic only: (m1,v1) < (m2,v2)  iff  3^m1 * v2^3 <
// 3^m2 * v1^3 after clearing the smaller power of 3.
class DefectValue {
 public:
  DefectValue(long long ones, BigInt argument);

  long long ones() const noexcept { return ones_; }
  const BigInt& argument() const noexcept { return argument_; }

  // True iff the denoted real is an integer, i.e. v is a power of 3;
  // the integer is then m - 3*log3(v) exactly.
  bool is_integer() const;
  long long integer_value() const;  // throws Error(Domain) unless is_integer()

  double approx() const;                        // display only
  std::string decimal(unsigned digits) const;   // display only, fixed-point
  std::string to_string() const;                // "m - 3*log3(v)"

  friend std::strong_ordering operator<=>(const DefectValue& a, const DefectValue& b);
  friend bool operator==(const DefectValue& a, const DefectValue& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  long long ones_;
  BigInt argument_;
};

// Exact rational cutoff p/q with a strict/closed mode.  Comparison with a
// DefectValue (m,v):  m - 3*log3(v) <=> p/q  iff  3^(q*m - p) <=> v^(3q),
// normalized so both sides are positive integers.
class Threshold {
 public:
  enum class Mode { Strict, Closed };

  Threshold(BigInt numerator, BigInt denominator, Mode mode = Mode::Strict);

  // Accepts decimal ("1.92"), rational ("48/25") and integer ("2")
  // literals, with an optional leading '-'.  No float parsing path exists.
  static Threshold parse(std::string_view text, Mode mode = Mode::Strict);

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }
  Mode mode() const noexcept { return mode_; }
  Threshold with_mode(Mode mode) const { return Threshold(num_, den_, mode); }

  std::strong_ordering compare(const DefectValue& d) const;  // d <=> p/q

  // Strict mode: d < p/q.  Closed mode: d <= p/q.
  bool admits(const DefectValue& d) const;

  long long floor_value() const;  // floor(p/q)
  std::string to_string() const;  // reduced "p/q", or "p" when q == 1

 private:
  BigInt num_;
  BigInt den_;  // >= 1
  Mode mode_;
};

// ---- table-backed defect operations ----

// delta(n) = ||n|| - 3*log3(n), as the exact pair (||n||, n).
DefectValue defect_of(std::uint64_t n, const ComplexityTable& table);

// n is the smallest number with its defect: 3 does not divide n, or
// ||n|| < 3 + ||n/3||.
bool is_leader(std::uint64_t n, const ComplexityTable& table);

struct LeaderDecomposition {
  std::uint64_t leader;  // m with n = 3^power * m, delta(m) = delta(n)
  unsigned power;        // ||n|| = ||m|| + 3*power
};
LeaderDecomposition leader_decomposition(std::uint64_t n, const ComplexityTable& table);

// min over 0 <= k <= horizon of delta(3^k n), with the smallest witnessing
// k.  exhausted_horizon is set when the minimum first appears at the
// horizon itself, i.e. the value was still dropping at the end of the
// scanned range and stability is not certified.
struct StableDefectResult {
  DefectValue value;
  unsigned witness;
  bool exhausted_horizon;
};
StableDefectResult stable_defect_within(std::uint64_t n, unsigned horizon,
                                        const ComplexityTable& table);

// Same scan for ||3^k n|| - 3k.
struct StableComplexityResult {
  long long value;
  unsigned witness;
  bool exhausted_horizon;
};
StableComplexityResult stable_complexity_within(std::uint64_t n, unsigned horizon,
                                                const ComplexityTable& table);

// Ascending leaders n <= limit whose defect the threshold admits.
std::vector<std::uint64_t> enumerate_leaders_below(const Threshold& threshold,
                                                   const ComplexityTable& table);

// Distinct defect values admitted by the threshold, sorted ascending,
// deduplicated by exact equality.
std::vector<DefectValue> distinct_defects_below(const Threshold& threshold,
                                                const ComplexityTable& table);

}  // namespace lowdefect

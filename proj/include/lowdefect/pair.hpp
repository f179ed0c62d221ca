#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "lowdefect/defect.hpp"
#include "lowdefect/polynomial.hpp"
#include "lowdefect/tree.hpp"

namespace lowdefect {

// A low-defect polynomial together with a witness tree and a base
// complexity C (at least the tree's complexity; not checked here since no
// table is at hand — the covering loader and augment_step do check).  The
// polynomial is derived from the tree; polynomial-to-tree is many-to-one
// and truncation works by tree surgery, so the tree is the primary datum.
class LowDefectPair {
 public:
  LowDefectPair(LowDefectTree witness, unsigned long long base_complexity);
  static LowDefectPair constant(std::uint64_t value, unsigned long long base_complexity);

  const LowDefectTree& witness() const noexcept { return witness_; }
  const LowDefectPolynomial& polynomial() const noexcept { return poly_; }
  unsigned long long base_complexity() const noexcept { return base_complexity_; }
  unsigned degree() const noexcept { return poly_.degree(); }

  // delta(f, C) = C - 3*log3(leading coefficient).
  DefectValue defect() const { return DefectValue(static_cast<long long>(base_complexity_),
                                                  poly_.leading_coefficient()); }

  // delta_{f,C}(k) = C + 3*sum(k) - 3*log3(f(3^k)).
  DefectValue defect_at(std::span<const std::uint64_t> exponents) const;

  std::string to_string() const;  // "(2x1x2+x2+1, 4)"

 private:
  LowDefectTree witness_;  // variables renumbered densely to 1..degree
  unsigned long long base_complexity_;
  LowDefectPolynomial poly_;
};

// Merges the witness trees at their roots (root label = product); the
// right-hand variables are shifted past the left-hand ones; C = C1 + C2.
LowDefectPair tensor(const LowDefectPair& a, const LowDefectPair& b);

// f*x_{r+1} + addend with base complexity C + addend_complexity; requires
// addend_complexity >= ||addend|| (contract error otherwise).
LowDefectPair augment_step(const LowDefectPair& p, std::uint64_t addend,
                           unsigned long long addend_complexity, const ComplexityTable& table);

}  // namespace lowdefect

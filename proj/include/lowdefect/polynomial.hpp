#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lowdefect/arith.hpp"
#include "lowdefect/complexity.hpp"
#include "lowdefect/tree.hpp"

namespace lowdefect {

// Multilinear polynomial over variables x1..xr with nonnegative integer
// coefficients, stored as a map from variable subsets (bitmasks, bit i-1 =
// x_i) to coefficients.  Valid instances have a positive constant term and
// a positive leading (full-subset) coefficient; the monomial support of a
// low-defect polynomial is exactly the set of rooted subtrees of any tree
// that yields it.
class LowDefectPolynomial {
 public:
  using Mask = std::uint64_t;

  LowDefectPolynomial(unsigned degree, std::map<Mask, BigInt> terms);

  unsigned degree() const noexcept { return degree_; }
  Mask full_mask() const noexcept {
    return degree_ == 0 ? 0 : (~Mask{0} >> (64 - degree_));
  }
  const std::map<Mask, BigInt>& terms() const noexcept { return terms_; }
  const BigInt& coefficient(Mask monomial) const;  // 0 when absent
  const BigInt& constant_term() const { return coefficient(0); }
  const BigInt& leading_coefficient() const { return coefficient(full_mask()); }

  // f(3^k1, ..., 3^kr); arity mismatch raises a range error.
  BigInt evaluate_at_powers(std::span<const std::uint64_t> exponents) const;

  // Smallest monomial containing x_var / largest monomial omitting it
  // (under divisibility, coefficients ignored).  A missing extremum means
  // the polynomial is not low-defect (structural error).
  Mask key_of(unsigned var) const;
  Mask antikey_of(unsigned var) const;

  // x_a precedes x_b in the nesting order iff key(x_b) divides key(x_a).
  bool precedes(unsigned a, unsigned b) const;

  // Parent forest of the nesting order: entry var-1 holds the immediate
  // successor of x_var, or 0 for maximal variables.  Cross-checked against
  // the anti-key criterion; disagreement raises a structural error.
  std::vector<unsigned> nesting_parents() const;

  std::vector<unsigned> minimal_variables() const;
  std::vector<unsigned> maximal_variables() const;

  // Canonical parenthesis string of the unlabeled rooted shape recovered
  // from the nesting order (root children = maximal variables).
  std::string shape_string() const;

  std::string to_string() const;  // e.g. "2x1x2+x2+1"

  friend bool operator==(const LowDefectPolynomial& a, const LowDefectPolynomial& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  unsigned degree_;
  std::map<Mask, BigInt> terms_;
};

// Expands a tree into its polynomial: the monomial of a rooted subtree has
// coefficient (product of its vertex labels) * (product of boundary edge
// labels).  Tree variables map to positions 1..degree in ascending id
// order.
LowDefectPolynomial polynomial_of(const LowDefectTree& tree);

// f * x_{r+1}: evaluation view used for expansion; never itself a
// low-defect polynomial (zero constant term).
class AugmentedPolynomial {
 public:
  explicit AugmentedPolynomial(LowDefectPolynomial base) : base_(std::move(base)) {}
  const LowDefectPolynomial& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return base_.degree() + 1; }
  const BigInt& leading_coefficient() const { return base_.leading_coefficient(); }
  BigInt constant_term() const { return 0; }
  // Arity degree()+... takes base().degree()+1 exponents; the last one
  // multiplies in 3^k for the fresh variable.
  BigInt evaluate_at_powers(std::span<const std::uint64_t> exponents) const;

 private:
  LowDefectPolynomial base_;
};

inline AugmentedPolynomial augmented(const LowDefectPolynomial& f) {
  return AugmentedPolynomial(f);
}

struct EnumerationBudget {
  unsigned max_degree = 6;
  std::uint64_t max_assignments = 4'000'000;
};

// All trees (up to isomorphism) whose polynomial equals `poly`.  The shape
// is forced by the nesting order; labels are searched over divisors of the
// coefficients they must divide.  Exceeding the budget raises a resource
// error.
std::vector<LowDefectTree> trees_for_polynomial(const LowDefectPolynomial& poly,
                                                const EnumerationBudget& budget = {});

// ||f||: the least tree complexity among trees yielding poly; always at
// least ||leading coefficient|| + degree.
unsigned long long absolute_base_complexity(const LowDefectPolynomial& poly,
                                            const ComplexityTable& table,
                                            const EnumerationBudget& budget = {});

}  // namespace lowdefect

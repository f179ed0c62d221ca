#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lowdefect/complexity.hpp"
#include "lowdefect/errors.hpp"

namespace lowdefect {

// Low-defect expression: built from positive integer constants by disjoint
// products and steps inner*x + c.  Every variable occurs exactly once.
// Stored as an immutable arena of nodes; copying is cheap enough for the
// sizes that occur here.
class Expression {
 public:
  enum class Kind { Constant, Product, Step };

  struct Node {
    Kind kind;
    std::uint64_t value = 0;  // Constant: the constant; Step: the addend c
    unsigned variable = 0;    // Step: variable id (>= 1)
    int left = -1;            // Product: left factor; Step: inner expression
    int right = -1;           // Product: right factor
  };

  static Expression constant(std::uint64_t value);
  static Expression product(const Expression& a, const Expression& b);
  static Expression step(const Expression& inner, unsigned variable, std::uint64_t addend);

  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  int root_index() const { return static_cast<int>(nodes_.size()) - 1; }
  const Node& root() const { return nodes_.back(); }
  Kind kind() const { return root().kind; }

  unsigned degree() const;                  // number of variables
  std::vector<unsigned> variables() const;  // ascending ids

  std::string to_string() const;

  // Sum of the complexities of all integer constants occurring in the
  // expression (||E||); needs the table to cover every constant.
  unsigned long long complexity(const ComplexityTable& table) const;

 private:
  Expression() = default;
  std::vector<Node> nodes_;  // root is the last node
};

// Parses the expression grammar (juxtaposition = product, '+' binds
// loosest, variables are x1, x2, ...).  Malformed text raises a parse
// error with its position; grammatical text that violates the low-defect
// construction rules (reused variable, sums other than inner*x + c,
// a trailing variable with no addend) raises a structural error.
Expression parse_expression(std::string_view text);

}  // namespace lowdefect

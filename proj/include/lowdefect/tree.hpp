#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lowdefect/arith.hpp"
#include "lowdefect/complexity.hpp"
#include "lowdefect/expression.hpp"

namespace lowdefect {

struct SExpr;

// Rooted tree with positive integer labels on vertices and edges; non-root
// vertices carry the variable of the expression they came from.  Two
// expressions are equivalent exactly when their trees are isomorphic
// (preserving root and labels, ignoring variables).
class LowDefectTree {
 public:
  struct Node {
    std::uint64_t label = 1;       // vertex label >= 1
    std::uint64_t edge_label = 0;  // label of the edge to the parent; root: unused
    unsigned variable = 0;         // variable id on non-root vertices
    std::vector<Node> children;
  };

  explicit LowDefectTree(Node root);
  static LowDefectTree single(std::uint64_t label);

  const Node& root() const noexcept { return root_; }
  unsigned degree() const noexcept { return degree_; }  // non-root vertex count

  // Canonical s-expression "(node L (edge E (node ...)) ...)", branches
  // sorted recursively; invariant under rooted labeled isomorphism and
  // independent of variable ids.  Doubles as the serialization format.
  const std::string& canonical_form() const noexcept { return canonical_; }

  // Parses the serialization; children are put in canonical order and the
  // non-root vertices get dense variable ids 1..degree in preorder.
  static LowDefectTree from_sexpr(std::string_view text);
  static LowDefectTree from_sexpr_node(const SExpr& node);

  // ||T||: complexities of all edge labels, leaf labels, and non-leaf
  // labels exceeding 1.
  unsigned long long complexity(const ComplexityTable& table) const;

  BigInt vertex_label_product() const;  // the leading coefficient of its polynomial
  std::uint64_t max_label() const;      // largest vertex or edge label

  std::vector<unsigned> variable_ids() const;  // ascending, one per non-root vertex
  bool has_dense_variables() const;            // ids are exactly 1..degree

  // Renumbers variables to 1..degree preserving ascending original order.
  // When `mapping` is given, (*mapping)[new_id - 1] = old_id.
  LowDefectTree renumbered(std::vector<unsigned>* mapping = nullptr) const;

  // Reduced low-defect expression for this tree (multiplications by 1
  // omitted); its tree is isomorphic to this one.
  Expression reduced_expression() const;

 private:
  Node root_;
  unsigned degree_ = 0;
  std::string canonical_;
};

LowDefectTree tree_of(const Expression& expression);

inline bool equivalent(const LowDefectTree& a, const LowDefectTree& b) {
  return a.canonical_form() == b.canonical_form();
}
bool equivalent(const Expression& a, const Expression& b);

}  // namespace lowdefect

#include "lowdefect/tree.hpp"

#include <algorithm>
#include <set>

#include "lowdefect/sexpr.hpp"

namespace lowdefect {

namespace {

void validate_node(const LowDefectTree::Node& n, bool is_root, unsigned& count) {
  if (n.label < 1) throw Error(Error::Kind::Structural, "vertex labels must be positive");
  if (!is_root) {
    if (n.edge_label < 1) throw Error(Error::Kind::Structural, "edge labels must be positive");
    ++count;
  }
  for (const auto& c : n.children) validate_node(c, false, count);
}

// Canonical string with branches sorted; sorts the node's children in place.
std::string canonize(LowDefectTree::Node& n) {
  std::vector<std::pair<std::string, LowDefectTree::Node>> branches;
  branches.reserve(n.children.size());
  for (auto& c : n.children) {
    std::string s = canonize(c);
    branches.emplace_back("(edge " + std::to_string(c.edge_label) + " " + s + ")",
                          std::move(c));
  }
  std::stable_sort(branches.begin(), branches.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = "(node " + std::to_string(n.label);
  n.children.clear();
  for (auto& [s, child] : branches) {
    out += " " + s;
    n.children.push_back(std::move(child));
  }
  out += ")";
  return out;
}

void collect_ids(const LowDefectTree::Node& n, bool is_root, std::vector<unsigned>& out) {
  if (!is_root) out.push_back(n.variable);
  for (const auto& c : n.children) collect_ids(c, false, out);
}

void assign_preorder_ids(LowDefectTree::Node& n, bool is_root, unsigned& next) {
  if (!is_root) n.variable = next++;
  for (auto& c : n.children) assign_preorder_ids(c, false, next);
}

}  // namespace

LowDefectTree::LowDefectTree(Node root) : root_(std::move(root)) {
  validate_node(root_, true, degree_);
  canonical_ = canonize(root_);
}

LowDefectTree LowDefectTree::single(std::uint64_t label) {
  Node n;
  n.label = label;
  return LowDefectTree(std::move(n));
}

namespace {

std::uint64_t u64_atom(const SExpr& s, const char* what) {
  if (!s.is_atom || s.quoted || s.atom.empty())
    throw ParseError(std::string("expected ") + what, s.line, s.column);
  std::uint64_t v = 0;
  for (char c : s.atom) {
    if (c < '0' || c > '9')
      throw ParseError(std::string("expected ") + what + ", got '" + s.atom + "'", s.line,
                       s.column);
    std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (v > (UINT64_MAX - digit) / 10)
      throw ParseError("integer too large", s.line, s.column);
    v = v * 10 + digit;
  }
  return v;
}

LowDefectTree::Node node_from(const SExpr& s) {
  if (s.is_atom || s.tag() != "node")
    throw ParseError("expected (node ...)", s.line, s.column);
  if (s.items.size() < 2)
    throw ParseError("(node ...) needs a label", s.line, s.column);
  LowDefectTree::Node n;
  n.label = u64_atom(s.at(1), "a vertex label");
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const SExpr& b = s.items[i];
    if (b.is_atom || b.tag() != "edge")
      throw ParseError("expected (edge ...)", b.line, b.column);
    if (b.items.size() != 3)
      throw ParseError("(edge ...) needs a label and a subtree", b.line, b.column);
    LowDefectTree::Node child = node_from(b.at(2));
    child.edge_label = u64_atom(b.at(1), "an edge label");
    n.children.push_back(std::move(child));
  }
  return n;
}

}  // namespace

LowDefectTree LowDefectTree::from_sexpr(std::string_view text) {
  return from_sexpr_node(parse_sexpr(text));
}

LowDefectTree LowDefectTree::from_sexpr_node(const SExpr& node) {
  unsigned next = 1;
  LowDefectTree t(node_from(node));  // canonical order first, then preorder ids
  assign_preorder_ids(t.root_, true, next);
  return t;
}

unsigned long long LowDefectTree::complexity(const ComplexityTable& table) const {
  unsigned long long total = 0;
  auto walk = [&](auto&& self, const Node& n, bool is_root) -> void {
    if (!is_root) total += table.complexity(n.edge_label);
    if (n.children.empty())
      total += table.complexity(n.label);
    else if (n.label > 1)
      total += table.complexity(n.label);
    for (const auto& c : n.children) self(self, c, false);
  };
  walk(walk, root_, true);
  return total;
}

BigInt LowDefectTree::vertex_label_product() const {
  BigInt product = 1;
  auto walk = [&](auto&& self, const Node& n) -> void {
    product *= n.label;
    for (const auto& c : n.children) self(self, c);
  };
  walk(walk, root_);
  return product;
}

std::uint64_t LowDefectTree::max_label() const {
  std::uint64_t m = 1;
  auto walk = [&](auto&& self, const Node& n, bool is_root) -> void {
    m = std::max(m, n.label);
    if (!is_root) m = std::max(m, n.edge_label);
    for (const auto& c : n.children) self(self, c, false);
  };
  walk(walk, root_, true);
  return m;
}

std::vector<unsigned> LowDefectTree::variable_ids() const {
  std::vector<unsigned> ids;
  collect_ids(root_, true, ids);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool LowDefectTree::has_dense_variables() const {
  auto ids = variable_ids();
  for (unsigned i = 0; i < ids.size(); ++i)
    if (ids[i] != i + 1) return false;
  return true;
}

LowDefectTree LowDefectTree::renumbered(std::vector<unsigned>* mapping) const {
  auto ids = variable_ids();
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    if (ids[i] == ids[i + 1] || ids[i] == 0)
      throw Error(Error::Kind::Structural, "tree variables must be distinct and assigned");
  if (!ids.empty() && ids.front() == 0)
    throw Error(Error::Kind::Structural, "tree variables must be distinct and assigned");
  Node copy = root_;
  auto walk = [&](auto&& self, Node& n, bool is_root) -> void {
    if (!is_root) {
      auto it = std::lower_bound(ids.begin(), ids.end(), n.variable);
      n.variable = static_cast<unsigned>(it - ids.begin()) + 1;
    }
    for (auto& c : n.children) self(self, c, false);
  };
  walk(walk, copy, true);
  if (mapping) *mapping = ids;
  return LowDefectTree(std::move(copy));
}

namespace {

Expression reduce(const LowDefectTree::Node& n) {
  if (n.children.empty()) return Expression::constant(n.label);
  Expression expr = Expression::constant(1);
  bool first = true;
  for (const auto& c : n.children) {
    Expression factor = Expression::step(reduce(c), c.variable, c.edge_label);
    expr = first ? std::move(factor) : Expression::product(expr, factor);
    first = false;
  }
  if (n.label != 1) expr = Expression::product(Expression::constant(n.label), expr);
  return expr;
}

}  // namespace

Expression LowDefectTree::reduced_expression() const {
  std::vector<unsigned> ids;
  collect_ids(root_, true, ids);
  std::set<unsigned> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size() || distinct.count(0))
    throw Error(Error::Kind::Structural, "tree variables must be distinct and assigned");
  return reduce(root_);
}

namespace {

LowDefectTree::Node build(const Expression& e, int index) {
  const auto& n = e.node(index);
  switch (n.kind) {
    case Expression::Kind::Constant: {
      LowDefectTree::Node t;
      t.label = n.value;
      return t;
    }
    case Expression::Kind::Step: {
      LowDefectTree::Node inner = build(e, n.left);
      inner.edge_label = n.value;
      inner.variable = n.variable;
      LowDefectTree::Node t;
      t.label = 1;
      t.children.push_back(std::move(inner));
      return t;
    }
    case Expression::Kind::Product: {
      LowDefectTree::Node a = build(e, n.left);
      LowDefectTree::Node b = build(e, n.right);
      LowDefectTree::Node t;
      t.label = checked_mul(a.label, b.label);
      t.children = std::move(a.children);
      for (auto& c : b.children) t.children.push_back(std::move(c));
      return t;
    }
  }
  throw Error(Error::Kind::Structural, "unreachable");
}

}  // namespace

LowDefectTree tree_of(const Expression& expression) {
  return LowDefectTree(build(expression, expression.root_index()));
}

bool equivalent(const Expression& a, const Expression& b) {
  return equivalent(tree_of(a), tree_of(b));
}

}  // namespace lowdefect

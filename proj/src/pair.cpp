#include "lowdefect/pair.hpp"

namespace lowdefect {

namespace {

LowDefectTree densify(LowDefectTree t) {
  return t.has_dense_variables() ? t : t.renumbered();
}

void shift_variables(LowDefectTree::Node& n, bool is_root, unsigned offset) {
  if (!is_root) n.variable += offset;
  for (auto& c : n.children) shift_variables(c, false, offset);
}

}  // namespace

LowDefectPair::LowDefectPair(LowDefectTree witness, unsigned long long base_complexity)
    : witness_(densify(std::move(witness))),
      base_complexity_(base_complexity),
      poly_(polynomial_of(witness_)) {}

LowDefectPair LowDefectPair::constant(std::uint64_t value, unsigned long long base_complexity) {
  return LowDefectPair(LowDefectTree::single(value), base_complexity);
}

DefectValue LowDefectPair::defect_at(std::span<const std::uint64_t> exponents) const {
  BigInt value = poly_.evaluate_at_powers(exponents);
  unsigned long long total = base_complexity_;
  for (std::uint64_t k : exponents) total = checked_add(total, checked_mul(3, k));
  return DefectValue(static_cast<long long>(total), std::move(value));
}

std::string LowDefectPair::to_string() const {
  return "(" + poly_.to_string() + ", " + std::to_string(base_complexity_) + ")";
}

LowDefectPair tensor(const LowDefectPair& a, const LowDefectPair& b) {
  LowDefectTree::Node root;
  root.label = checked_mul(a.witness().root().label, b.witness().root().label);
  root.children = a.witness().root().children;
  LowDefectTree::Node rhs = b.witness().root();
  shift_variables(rhs, true, a.degree());
  for (auto& c : rhs.children) root.children.push_back(std::move(c));
  return LowDefectPair(LowDefectTree(std::move(root)),
                       checked_add(a.base_complexity(), b.base_complexity()));
}

LowDefectPair augment_step(const LowDefectPair& p, std::uint64_t addend,
                           unsigned long long addend_complexity, const ComplexityTable& table) {
  if (addend < 1) throw Error(Error::Kind::Contract, "step addend must be positive");
  if (addend_complexity < table.complexity(addend))
    throw Error(Error::Kind::Contract,
                "declared complexity " + std::to_string(addend_complexity) + " is below ||" +
                    std::to_string(addend) + "|| = " + std::to_string(table.complexity(addend)));
  LowDefectTree::Node inner = p.witness().root();
  inner.edge_label = addend;
  inner.variable = p.degree() + 1;
  LowDefectTree::Node root;
  root.label = 1;
  root.children.push_back(std::move(inner));
  return LowDefectPair(LowDefectTree(std::move(root)),
                       checked_add(p.base_complexity(), addend_complexity));
}

}  // namespace lowdefect

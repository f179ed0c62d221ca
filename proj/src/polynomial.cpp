#include "lowdefect/polynomial.hpp"

#include <algorithm>
#include <bit>

namespace lowdefect {

namespace {

const BigInt kZero = 0;

[[noreturn]] void not_low_defect(const std::string& detail) {
  throw Error(Error::Kind::Structural, "polynomial is not low-defect: " + detail);
}

}  // namespace

LowDefectPolynomial::LowDefectPolynomial(unsigned degree, std::map<Mask, BigInt> terms)
    : degree_(degree), terms_(std::move(terms)) {
  if (degree > 63) throw Error(Error::Kind::Resource, "degree above 63 is not supported");
  for (const auto& [mask, coeff] : terms_) {
    if (mask & ~full_mask())
      throw Error(Error::Kind::Structural, "monomial uses a variable beyond the degree");
    if (coeff < 0) throw Error(Error::Kind::Structural, "coefficients must be nonnegative");
  }
  if (constant_term() < 1) not_low_defect("constant term vanishes");
  if (leading_coefficient() < 1) not_low_defect("leading coefficient vanishes");
}

const BigInt& LowDefectPolynomial::coefficient(Mask monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? kZero : it->second;
}

BigInt LowDefectPolynomial::evaluate_at_powers(std::span<const std::uint64_t> exponents) const {
  if (exponents.size() != degree_)
    throw Error(Error::Kind::Range, "expected " + std::to_string(degree_) + " exponents, got " +
                                        std::to_string(exponents.size()));
  BigInt total = 0;
  for (const auto& [mask, coeff] : terms_) {
    std::uint64_t e = 0;
    for (unsigned i = 0; i < degree_; ++i)
      if (mask & (Mask{1} << i)) e = checked_add(e, exponents[i]);
    total += coeff * pow3(e);
  }
  return total;
}

LowDefectPolynomial::Mask LowDefectPolynomial::key_of(unsigned var) const {
  if (var < 1 || var > degree_) throw Error(Error::Kind::Range, "variable out of range");
  Mask bit = Mask{1} << (var - 1);
  Mask key = full_mask();
  for (const auto& [mask, coeff] : terms_)
    if (mask & bit) key &= mask;
  if (terms_.find(key) == terms_.end())
    not_low_defect("monomials containing x" + std::to_string(var) +
                   " have no divisibility-minimum");
  return key;
}

LowDefectPolynomial::Mask LowDefectPolynomial::antikey_of(unsigned var) const {
  if (var < 1 || var > degree_) throw Error(Error::Kind::Range, "variable out of range");
  Mask bit = Mask{1} << (var - 1);
  Mask antikey = 0;
  for (const auto& [mask, coeff] : terms_)
    if (!(mask & bit)) antikey |= mask;
  if (terms_.find(antikey) == terms_.end())
    not_low_defect("monomials omitting x" + std::to_string(var) +
                   " have no divisibility-maximum");
  return antikey;
}

bool LowDefectPolynomial::precedes(unsigned a, unsigned b) const {
  Mask ka = key_of(a), kb = key_of(b);
  return (kb & ~ka) == 0;
}

std::vector<unsigned> LowDefectPolynomial::nesting_parents() const {
  std::vector<Mask> keys(degree_), antikeys(degree_);
  for (unsigned v = 1; v <= degree_; ++v) {
    keys[v - 1] = key_of(v);
    antikeys[v - 1] = antikey_of(v);
  }
  std::vector<unsigned> parents(degree_, 0);
  for (unsigned v = 1; v <= degree_; ++v) {
    // Ancestors of x_v are the other variables of its key; the nearest one
    // has key = key(v) minus v itself.
    Mask expected = keys[v - 1] & ~(Mask{1} << (v - 1));
    unsigned parent = 0;
    for (unsigned u = 1; u <= degree_; ++u)
      if (u != v && keys[u - 1] == expected) parent = u;
    if (parent == 0 && expected != 0)
      not_low_defect("key of x" + std::to_string(v) + " has no parent monomial");
    parents[v - 1] = parent;
  }
  // The anti-key criterion must induce the same order.
  for (unsigned a = 1; a <= degree_; ++a)
    for (unsigned b = 1; b <= degree_; ++b) {
      bool by_key = (keys[b - 1] & ~keys[a - 1]) == 0;
      bool by_antikey = (antikeys[b - 1] & ~antikeys[a - 1]) == 0;
      if (by_key != by_antikey)
        not_low_defect("key and anti-key orders disagree on x" + std::to_string(a) + ", x" +
                       std::to_string(b));
    }
  return parents;
}

std::vector<unsigned> LowDefectPolynomial::minimal_variables() const {
  auto parents = nesting_parents();
  std::vector<bool> has_child(degree_ + 1, false);
  for (unsigned v = 1; v <= degree_; ++v)
    if (parents[v - 1] != 0) has_child[parents[v - 1]] = true;
  std::vector<unsigned> out;
  for (unsigned v = 1; v <= degree_; ++v)
    if (!has_child[v]) out.push_back(v);
  return out;
}

std::vector<unsigned> LowDefectPolynomial::maximal_variables() const {
  auto parents = nesting_parents();
  std::vector<unsigned> out;
  for (unsigned v = 1; v <= degree_; ++v)
    if (parents[v - 1] == 0) out.push_back(v);
  return out;
}

namespace {

std::string shape_of(const std::vector<std::vector<unsigned>>& children, unsigned v) {
  std::vector<std::string> parts;
  for (unsigned c : children[v]) parts.push_back(shape_of(children, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

}  // namespace

std::string LowDefectPolynomial::shape_string() const {
  auto parents = nesting_parents();
  std::vector<std::vector<unsigned>> children(degree_ + 1);
  for (unsigned v = 1; v <= degree_; ++v) children[parents[v - 1]].push_back(v);
  return shape_of(children, 0);
}

std::string LowDefectPolynomial::to_string() const {
  std::vector<std::pair<Mask, const BigInt*>> orderd;
  for (const auto& [mask, coeff] : terms_) orderd.emplace_back(mask, &coeff);
  std::sort(orderd.begin(), orderd.end(), [](const auto& a, const auto& b) {
    int pa = std::popcount(a.first), pb = std::popcount(b.first);
    if (pa != pb) return pa > pb;
    return a.first < b.first;
  });
  std::string out;
  for (const auto& [mask, coeff] : orderd) {
    if (!out.empty()) out += "+";
    if (mask == 0 || *coeff != 1) out += coeff->str();
    for (unsigned i = 0; i < degree_; ++i)
      if (mask & (Mask{1} << i)) out += "x" + std::to_string(i + 1);
  }
  return out;
}

namespace {

using Mask = LowDefectPolynomial::Mask;
using TermMap = std::map<Mask, BigInt>;

// (edge + x_v * subtree) convolution, one child at a time.
TermMap expand_node(const LowDefectTree::Node& n,
                    const std::map<unsigned, unsigned>& position_of) {
  TermMap acc;
  acc[0] = BigInt(n.label);
  for (const auto& child : n.children) {
    TermMap sub = expand_node(child, position_of);
    Mask bit = Mask{1} << (position_of.at(child.variable) - 1);
    TermMap next;
    for (const auto& [m1, c1] : acc) {
      next[m1] += c1 * child.edge_label;
      for (const auto& [m2, c2] : sub) next[m1 | m2 | bit] += c1 * c2;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

LowDefectPolynomial polynomial_of(const LowDefectTree& tree) {
  auto ids = tree.variable_ids();
  std::map<unsigned, unsigned> position_of;
  for (unsigned i = 0; i < ids.size(); ++i) {
    if (ids[i] == 0 || position_of.count(ids[i]))
      throw Error(Error::Kind::Structural, "tree variables must be distinct and assigned");
    position_of[ids[i]] = i + 1;
  }
  return LowDefectPolynomial(static_cast<unsigned>(ids.size()),
                             expand_node(tree.root(), position_of));
}

BigInt AugmentedPolynomial::evaluate_at_powers(std::span<const std::uint64_t> exponents) const {
  if (exponents.size() != degree())
    throw Error(Error::Kind::Range, "expected " + std::to_string(degree()) + " exponents, got " +
                                        std::to_string(exponents.size()));
  return base_.evaluate_at_powers(exponents.subspan(0, base_.degree())) *
         pow3(exponents.back());
}

// ---------------------------------------------------------------------------
// Tree enumeration: recover the shape from the nesting order, bound each
// label by divisibility, and search.

namespace {

std::uint64_t gcd_to_u64(const BigInt& g) {
  if (!fits_uint64(g))
    throw Error(Error::Kind::Resource, "coefficient gcd too large to enumerate divisors");
  return static_cast<std::uint64_t>(g);
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct LabelSearch {
  const LowDefectPolynomial& poly;
  unsigned r;
  std::vector<unsigned> parents;                   // nesting forest (0 = root)
  std::vector<std::vector<unsigned>> children;     // children[0] = root's
  std::vector<unsigned> order;                     // preorder over variables
  // Unknowns, indexed 0..2r: slot 0 = root label; slot 2i-1 = edge label of
  // order[i-1]'s vertex, slot 2i = its vertex label.
  std::vector<std::vector<std::uint64_t>> candidates;
  std::vector<std::vector<Mask>> checks;           // masks ready after slot s
  std::vector<std::uint64_t> chosen;
  std::vector<std::uint64_t> slot_of_vertex;       // per variable: vertex slot
  std::vector<std::uint64_t> slot_of_edge;
  std::uint64_t tried = 0;
  std::uint64_t budget;
  std::vector<LowDefectTree> results;

  BigInt mask_value(Mask m) const {
    // Coefficient the current assignment implies for monomial m (all slots
    // involved must be chosen).
    BigInt v = chosen[0];
    for (unsigned var = 1; var <= r; ++var) {
      Mask bit = Mask{1} << (var - 1);
      bool inside = (m & bit) != 0;
      unsigned parent = parents[var - 1];
      bool parent_inside = parent == 0 || (m & (Mask{1} << (parent - 1)));
      if (inside)
        v *= chosen[slot_of_vertex[var]];
      else if (parent_inside)
        v *= chosen[slot_of_edge[var]];
    }
    return v;
  }

  void dfs(std::size_t slot) {
    if (++tried > budget)
      throw Error(Error::Kind::Resource, "tree enumeration budget exceeded");
    if (slot == candidates.size()) {
      results.push_back(build_tree());
      return;
    }
    for (std::uint64_t value : candidates[slot]) {
      chosen[slot] = value;
      bool ok = true;
      for (Mask m : checks[slot])
        if (mask_value(m) != poly.coefficient(m)) {
          ok = false;
          break;
        }
      if (ok) dfs(slot + 1);
    }
  }

  LowDefectTree build_tree() const {
    auto make = [&](auto&& self, unsigned var) -> LowDefectTree::Node {
      LowDefectTree::Node n;
      if (var == 0) {
        n.label = chosen[0];
      } else {
        n.label = chosen[slot_of_vertex[var]];
        n.edge_label = chosen[slot_of_edge[var]];
        n.variable = var;
      }
      for (unsigned c : children[var]) n.children.push_back(self(self, c));
      return n;
    };
    return LowDefectTree(make(make, 0));
  }
};

}  // namespace

std::vector<LowDefectTree> trees_for_polynomial(const LowDefectPolynomial& poly,
                                                const EnumerationBudget& budget) {
  unsigned r = poly.degree();
  if (r == 0) {
    std::vector<LowDefectTree> out;
    out.push_back(LowDefectTree::single(to_uint64(poly.constant_term())));
    return out;
  }
  if (r > budget.max_degree)
    throw Error(Error::Kind::Resource,
                "degree " + std::to_string(r) + " exceeds the enumeration budget");

  LabelSearch search{poly, r, poly.nesting_parents(), {}, {}, {}, {}, {}, {}, {},
                     0, budget.max_assignments, {}};
  search.children.assign(r + 1, {});
  for (unsigned v = 1; v <= r; ++v) search.children[search.parents[v - 1]].push_back(v);

  // The monomial support must be exactly the rooted subtrees of the shape.
  std::vector<Mask> subtrees;
  {
    auto grow = [&](auto&& self, unsigned var) -> std::vector<Mask> {
      // All subtree masks of the branch at `var`, including "absent".
      std::vector<Mask> out{0};
      std::vector<Mask> with{Mask{1} << (var - 1)};
      for (unsigned c : search.children[var]) {
        std::vector<Mask> ext;
        for (Mask w : with)
          for (Mask sub : self(self, c)) ext.push_back(w | sub);
        with = std::move(ext);
      }
      out.insert(out.end(), with.begin(), with.end());
      return out;
    };
    std::vector<Mask> acc{0};
    for (unsigned c : search.children[0]) {
      std::vector<Mask> ext;
      for (Mask a : acc)
        for (Mask sub : grow(grow, c)) ext.push_back(a | sub);
      acc = std::move(ext);
    }
    subtrees = std::move(acc);
  }
  std::sort(subtrees.begin(), subtrees.end());
  {
    std::vector<Mask> support;
    for (const auto& [m, c] : poly.terms()) support.push_back(m);
    if (support != subtrees)
      throw Error(Error::Kind::Structural,
                  "polynomial is not low-defect: support does not match the recovered shape");
  }

  // Preorder over variables; slots and divisor candidates.
  search.order.reserve(r);
  {
    auto visit = [&](auto&& self, unsigned v) -> void {
      if (v != 0) search.order.push_back(v);
      for (unsigned c : search.children[v]) self(self, c);
    };
    visit(visit, 0);
  }
  search.slot_of_vertex.assign(r + 1, 0);
  search.slot_of_edge.assign(r + 1, 0);
  search.candidates.resize(2 * r + 1);
  search.chosen.assign(2 * r + 1, 0);

  BigInt g_all = 0;
  for (const auto& [m, c] : poly.terms()) g_all = boost::multiprecision::gcd(g_all, c);
  search.candidates[0] = divisors_of(gcd_to_u64(g_all));

  for (unsigned i = 0; i < r; ++i) {
    unsigned var = search.order[i];
    Mask bit = Mask{1} << (var - 1);
    unsigned parent = search.parents[var - 1];
    std::size_t edge_slot = 2 * i + 1, vertex_slot = 2 * i + 2;
    search.slot_of_edge[var] = edge_slot;
    search.slot_of_vertex[var] = vertex_slot;
    BigInt g_vertex = 0, g_edge = 0;
    for (const auto& [m, c] : poly.terms()) {
      if (m & bit) g_vertex = boost::multiprecision::gcd(g_vertex, c);
      bool parent_inside = parent == 0 || (m & (Mask{1} << (parent - 1)));
      if (!(m & bit) && parent_inside) g_edge = boost::multiprecision::gcd(g_edge, c);
    }
    search.candidates[edge_slot] = divisors_of(gcd_to_u64(g_edge));
    search.candidates[vertex_slot] = divisors_of(gcd_to_u64(g_vertex));
  }

  // A monomial equation is checkable once the last slot it mentions is set.
  search.checks.resize(2 * r + 1);
  for (Mask m : subtrees) {
    std::size_t last = 0;
    for (unsigned var = 1; var <= r; ++var) {
      Mask bit = Mask{1} << (var - 1);
      unsigned parent = search.parents[var - 1];
      bool parent_inside = parent == 0 || (m & (Mask{1} << (parent - 1)));
      if (m & bit)
        last = std::max(last, static_cast<std::size_t>(search.slot_of_vertex[var]));
      else if (parent_inside)
        last = std::max(last, static_cast<std::size_t>(search.slot_of_edge[var]));
    }
    search.checks[last].push_back(m);
  }

  // Slot 0 has its own check when the constant touches nothing else (r=0
  // handled above, so the constant always involves root-child edges).
  search.dfs(0);

  // Distinct assignments can land on isomorphic trees when sibling branches
  // swap; dedup on canonical form.
  std::sort(search.results.begin(), search.results.end(),
            [](const LowDefectTree& a, const LowDefectTree& b) {
              return a.canonical_form() < b.canonical_form();
            });
  search.results.erase(std::unique(search.results.begin(), search.results.end(),
                                   [](const LowDefectTree& a, const LowDefectTree& b) {
                                     return a.canonical_form() == b.canonical_form();
                                   }),
                       search.results.end());
  // Paranoia: every candidate must reproduce the polynomial exactly.
  for (const auto& t : search.results)
    if (!(polynomial_of(t.renumbered()) == poly))
      throw Error(Error::Kind::Structural, "enumeration produced a non-matching tree");
  return search.results;
}

unsigned long long absolute_base_complexity(const LowDefectPolynomial& poly,
                                            const ComplexityTable& table,
                                            const EnumerationBudget& budget) {
  auto trees = trees_for_polynomial(poly, budget);
  if (trees.empty())
    throw Error(Error::Kind::Structural, "polynomial has no witnessing tree");
  unsigned long long best = ~0ull;
  for (const auto& t : trees) best = std::min(best, t.complexity(table));
  return best;
}

}  // namespace lowdefect

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lowdefect/polynomial.hpp"
#include "oracles.hpp"

using lowdefect::BigInt;
using lowdefect::ComplexityTable;
using lowdefect::Error;
using lowdefect::LowDefectPolynomial;
using lowdefect::LowDefectTree;
using lowdefect::parse_expression;
using lowdefect::polynomial_of;
using lowdefect::tree_of;
using Mask = LowDefectPolynomial::Mask;

TEST_CASE("golden polynomial") {
  auto f = polynomial_of(tree_of(parse_expression("(2x1+1)x2+1")));
  CHECK(f.degree() == 2);
  CHECK(f.coefficient(0b00) == 1);
  CHECK(f.coefficient(0b10) == 1);   // x2
  CHECK(f.coefficient(0b11) == 2);   // x1x2
  CHECK(f.coefficient(0b01) == 0);   // no bare x1 monomial
  CHECK(f.leading_coefficient() == 2);
  CHECK(f.to_string() == "2x1x2+x2+1");
}

TEST_CASE("both figure-3 trees give 4x+2") {
  auto a = polynomial_of(tree_of(parse_expression("2(2x1+1)")));
  auto b = polynomial_of(tree_of(parse_expression("4x1+2")));
  CHECK(a == b);
  CHECK(a.coefficient(0) == 2);
  CHECK(a.coefficient(1) == 4);
  CHECK(a.to_string() == "4x1+2");
}

TEST_CASE("figure-2 coefficients") {
  // 2((73(3x1+1)x2+6)(2x3+1)x4+1) = 2(219x1x2+73x2+6)(2x3+1)x4+2 expanded
  auto t = tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)"));
  auto f = polynomial_of(t);
  CHECK(f.degree() == 4);
  auto bit = [](unsigned v) { return Mask{1} << (v - 1); };
  CHECK(f.coefficient(bit(3) | bit(4)) == 24);  // vertices {2,1,2}, boundary edge 6
  CHECK(f.coefficient(0) == 2);
  CHECK(f.coefficient(bit(1) | bit(2) | bit(3) | bit(4)) == 2 * 219 * 2);
  CHECK(f.leading_coefficient() == t.vertex_label_product());
  // full expansion via the independent symbolic oracle
  auto expected = oracles::symbolic_expansion(t.reduced_expression());
  CHECK(f.terms() == expected);
}

TEST_CASE("constant polynomial") {
  auto f = polynomial_of(LowDefectTree::single(58));
  CHECK(f.degree() == 0);
  CHECK(f.constant_term() == 58);
  CHECK(f.leading_coefficient() == 58);
  CHECK(f.to_string() == "58");
}

TEST_CASE("evaluation at powers of 3") {
  auto f = polynomial_of(tree_of(parse_expression("(2x1+1)x2+1")));
  std::vector<std::uint64_t> ks{2, 2};
  CHECK(f.evaluate_at_powers(ks) == 172);  // 19*9+1
  std::vector<std::uint64_t> zeros{0, 0};
  CHECK(f.evaluate_at_powers(zeros) == 4);  // sum of the coefficients
  auto c = polynomial_of(LowDefectTree::single(58));
  CHECK(c.evaluate_at_powers({}) == 58);
  std::vector<std::uint64_t> one{0};
  CHECK_THROWS_AS((void)f.evaluate_at_powers(one), Error);  // arity mismatch
}

TEST_CASE("keys, anti-keys and nesting for the golden pair") {
  auto f = polynomial_of(tree_of(parse_expression("(2x1+1)x2+1")));
  CHECK(f.key_of(1) == 0b11);
  CHECK(f.key_of(2) == 0b10);
  CHECK(f.antikey_of(1) == 0b10);
  CHECK(f.antikey_of(2) == 0b00);
  CHECK(f.precedes(1, 2));
  CHECK_FALSE(f.precedes(2, 1));
  CHECK(f.nesting_parents() == std::vector<unsigned>{2, 0});
  CHECK(f.minimal_variables() == std::vector<unsigned>{1});
  CHECK(f.maximal_variables() == std::vector<unsigned>{2});
  CHECK(f.shape_string() == "((()))");
}

TEST_CASE("figure-2 nesting order") {
  auto f = polynomial_of(tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)")));
  CHECK(f.precedes(1, 2));
  CHECK(f.precedes(2, 4));
  CHECK(f.precedes(3, 4));
  CHECK(f.precedes(1, 4));
  CHECK_FALSE(f.precedes(1, 3));
  CHECK_FALSE(f.precedes(3, 2));
  CHECK(f.minimal_variables() == std::vector<unsigned>{1, 3});
  CHECK(f.maximal_variables() == std::vector<unsigned>{4});
  CHECK(f.nesting_parents() == std::vector<unsigned>{2, 4, 4, 0});
}

TEST_CASE("constant has empty order") {
  auto f = polynomial_of(LowDefectTree::single(7));
  CHECK(f.minimal_variables().empty());
  CHECK(f.maximal_variables().empty());
  CHECK(f.shape_string() == "()");
}

TEST_CASE("trees for 4x+2 are exactly the two figure-3 trees") {
  auto f = polynomial_of(tree_of(parse_expression("4x1+2")));
  auto trees = trees_for_polynomial(f);
  REQUIRE(trees.size() == 2);
  CHECK(trees[0].canonical_form() == "(node 1 (edge 2 (node 4)))");
  CHECK(trees[1].canonical_form() == "(node 2 (edge 1 (node 2)))");
  auto table = ComplexityTable::build(100);
  CHECK(absolute_base_complexity(f, table) == 5);  // via 2(2x+1)
}

TEST_CASE("absolute base complexities") {
  auto table = ComplexityTable::build(100);
  auto c = polynomial_of(LowDefectTree::single(58));
  auto trees = trees_for_polynomial(c);
  REQUIRE(trees.size() == 1);
  CHECK(absolute_base_complexity(c, table) == 13);
  auto f = polynomial_of(tree_of(parse_expression("3x1+1")));
  CHECK(absolute_base_complexity(f, table) == 4);
  auto golden = polynomial_of(tree_of(parse_expression("(2x1+1)x2+1")));
  CHECK(absolute_base_complexity(golden, table) == 4);
}

TEST_CASE("degree budget") {
  auto e = parse_expression("(((((((2x1+1)x2+1)x3+1)x4+1)x5+1)x6+1)x7+1)");
  auto f = polynomial_of(tree_of(e));
  CHECK(f.degree() == 7);
  CHECK_THROWS_AS((void)trees_for_polynomial(f), Error);
  lowdefect::EnumerationBudget wide;
  wide.max_degree = 8;
  CHECK(trees_for_polynomial(f, wide).size() >= 1);
}

TEST_CASE("the paper's non-low-defect substitution example is rejected") {
  // 9x1x2+3x1+3x2+2 comes from substituting the non-minimal variable of
  // (3x1+1)(3x2+1)x3+1 and is not a low-defect polynomial.
  std::map<Mask, BigInt> terms{{0b00, 2}, {0b01, 3}, {0b10, 3}, {0b11, 9}};
  LowDefectPolynomial f(2, std::move(terms));
  CHECK(trees_for_polynomial(f).empty());
  auto table = ComplexityTable::build(100);
  CHECK_THROWS_AS((void)absolute_base_complexity(f, table), Error);
}

TEST_CASE("missing key extremum is a structural error") {
  // x1 appears in {x1} and {x1x2}... build support {{}, {1}, {2}, {1,2}} is
  // fine; {{}, {1,2}, {1,3}, ...} without their meet is not.
  std::map<Mask, BigInt> terms{{0b000, 1}, {0b011, 1}, {0b101, 1}, {0b111, 1},
                               {0b010, 1}, {0b100, 1}};
  LowDefectPolynomial f(3, std::move(terms));
  CHECK_THROWS_AS((void)f.key_of(1), Error);  // masks with x1: {11,101,111}, meet = {1} absent
}

TEST_CASE("random trees: expansion, leading coefficient, round trips, orders") {
  std::mt19937_64 rng(2024);
  auto table = ComplexityTable::build(1000000);
  for (int i = 0; i < 120; ++i) {
    unsigned vertices = 1 + static_cast<unsigned>(rng() % 8);
    auto t = oracles::random_tree(rng, vertices);
    auto f = polynomial_of(t);
    // polynomial equals the symbolic expansion of the reduced expression
    auto expr = t.reduced_expression();
    CHECK(f.terms() == oracles::symbolic_expansion(expr));
    // leading coefficient is the product of the vertex labels
    CHECK(f.leading_coefficient() == t.vertex_label_product());
    // tree complexity >= ||leading|| + degree
    CHECK(t.complexity(table) >=
          table.complexity(lowdefect::to_uint64(f.leading_coefficient())) + t.degree());
    // nesting order from keys equals ancestry in the witness tree
    auto parents = f.nesting_parents();
    // ancestry from the tree: walk it, mapping variable ids to positions
    auto ids = t.variable_ids();
    auto pos = [&](unsigned id) {
      return static_cast<unsigned>(
                 std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()) + 1;
    };
    auto walk = [&](auto&& self, const LowDefectTree::Node& n, unsigned parent_pos) -> void {
      for (const auto& c : n.children) {
        unsigned p = pos(c.variable);
        CHECK(parents[p - 1] == parent_pos);
        self(self, c, p);
      }
    };
    walk(walk, t.root(), 0);
  }
}

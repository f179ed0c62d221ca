#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lowdefect/tree.hpp"
#include "oracles.hpp"

using lowdefect::ComplexityTable;
using lowdefect::Error;
using lowdefect::LowDefectTree;
using lowdefect::ParseError;
using lowdefect::parse_expression;
using lowdefect::tree_of;

TEST_CASE("golden tree structure") {
  auto t = tree_of(parse_expression("(2x1+1)x2+1"));
  CHECK(t.degree() == 2);
  const auto& root = t.root();
  CHECK(root.label == 1);
  REQUIRE(root.children.size() == 1);
  const auto& a = root.children[0];
  CHECK(a.label == 1);
  CHECK(a.edge_label == 1);
  CHECK(a.variable == 2);
  REQUIRE(a.children.size() == 1);
  const auto& b = a.children[0];
  CHECK(b.label == 2);
  CHECK(b.edge_label == 1);
  CHECK(b.variable == 1);
  CHECK(b.children.empty());
  CHECK(t.canonical_form() == "(node 1 (edge 1 (node 1 (edge 1 (node 2)))))");
}

TEST_CASE("figure-2 tree") {
  auto t = tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)"));
  CHECK(t.degree() == 4);
  const auto& root = t.root();
  CHECK(root.label == 2);
  REQUIRE(root.children.size() == 1);
  const auto& v4 = root.children[0];
  CHECK(v4.label == 1);
  CHECK(v4.edge_label == 1);
  CHECK(v4.variable == 4);
  REQUIRE(v4.children.size() == 2);
  // canonical order sorts the (edge 1 (node 2)) branch before (edge 6 ...)
  const auto& v3 = v4.children[0];
  CHECK(v3.label == 2);
  CHECK(v3.edge_label == 1);
  CHECK(v3.variable == 3);
  const auto& v2 = v4.children[1];
  CHECK(v2.label == 73);
  CHECK(v2.edge_label == 6);
  CHECK(v2.variable == 2);
  REQUIRE(v2.children.size() == 1);
  CHECK(v2.children[0].label == 3);
  CHECK(v2.children[0].edge_label == 1);
  CHECK(v2.children[0].variable == 1);
}

TEST_CASE("single vertex") {
  auto t = tree_of(parse_expression("7"));
  CHECK(t.degree() == 0);
  CHECK(t.root().label == 7);
  CHECK(t.canonical_form() == "(node 7)");
}

TEST_CASE("2(2x+1) and 4x+2 are different trees") {
  auto a = tree_of(parse_expression("2(2x1+1)"));
  auto b = tree_of(parse_expression("4x1+2"));
  CHECK(a.canonical_form() == "(node 2 (edge 1 (node 2)))");
  CHECK(b.canonical_form() == "(node 1 (edge 2 (node 4)))");
  CHECK_FALSE(equivalent(a, b));
}

TEST_CASE("constant splits and factor order do not change the tree") {
  CHECK(equivalent(parse_expression("2(3x1+1)"), parse_expression("(1 2)(3x1+1)")));
  CHECK(equivalent(parse_expression("6x1+2"), parse_expression("(2 3)x1+2")));
  CHECK(equivalent(parse_expression("(3x1+1)(5x2+2)"), parse_expression("(5x1+2)(3x2+1)")));
  // permuting sibling branches of the figure-2 tree
  CHECK(equivalent(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)"),
                   parse_expression("2((2x1+1)(73(3x2+1)x3+6)x4+1)")));
}

TEST_CASE("reduced expressions") {
  auto single = LowDefectTree::single(9);
  CHECK(single.reduced_expression().to_string() == "9");

  LowDefectTree::Node root;
  root.label = 1;
  LowDefectTree::Node child;
  child.label = 4;
  child.edge_label = 2;
  child.variable = 1;
  root.children.push_back(child);
  auto t = LowDefectTree(root);
  CHECK(t.reduced_expression().to_string() == "4x1+2");

  auto fig2 = tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)"));
  auto back = tree_of(fig2.reduced_expression());
  CHECK(equivalent(fig2, back));
}

TEST_CASE("round trip on random trees") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    unsigned vertices = 1 + static_cast<unsigned>(rng() % 8);
    auto t = oracles::random_tree(rng, vertices);
    auto back = tree_of(t.reduced_expression());
    CHECK(equivalent(t, back));
  }
}

TEST_CASE("tree complexity") {
  auto table = ComplexityTable::build(100);
  CHECK(tree_of(parse_expression("(2x1+1)x2+1")).complexity(table) == 4);
  CHECK(tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)")).complexity(table) == 28);
  CHECK(LowDefectTree::single(7).complexity(table) == 6);
  // label outside the table
  auto big = LowDefectTree::single(101);
  CHECK_THROWS_AS((void)big.complexity(table), Error);
}

TEST_CASE("serialization round trip") {
  auto t = tree_of(parse_expression("2((73(3x1+1)x2+6)(2x3+1)x4+1)"));
  auto back = LowDefectTree::from_sexpr(t.canonical_form());
  CHECK(equivalent(t, back));
  CHECK(back.canonical_form() == t.canonical_form());
  CHECK(back.has_dense_variables());
  // branch order in the input does not matter
  auto shuffled = LowDefectTree::from_sexpr(
      "(node 1 (edge 6 (node 73 (edge 1 (node 3)))) (edge 1 (node 2)))");
  auto sorted = LowDefectTree::from_sexpr(
      "(node 1 (edge 1 (node 2)) (edge 6 (node 73 (edge 1 (node 3)))))");
  CHECK(shuffled.canonical_form() == sorted.canonical_form());
}

TEST_CASE("serialization rejects malformed input") {
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(nod 3)"), ParseError);
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(node)"), ParseError);
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(node 3 (edge 1))"), ParseError);
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(node 3 (edge x (node 1)))"), ParseError);
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(node 3"), ParseError);
  CHECK_THROWS_AS((void)LowDefectTree::from_sexpr("(node 0)"), Error);  // label >= 1
}

TEST_CASE("renumbering preserves order and reports the mapping") {
  auto t = tree_of(parse_expression("(2x5+1)x9+1"));
  std::vector<unsigned> mapping;
  auto dense = t.renumbered(&mapping);
  CHECK(dense.has_dense_variables());
  CHECK(mapping == std::vector<unsigned>{5, 9});
  CHECK(equivalent(t, dense));
}

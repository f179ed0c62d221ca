#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lowdefect/truncation.hpp"
#include "oracles.hpp"

using lowdefect::ComplexityTable;
using lowdefect::Error;
using lowdefect::LowDefectPair;
using lowdefect::SubstitutionPattern;
using lowdefect::Threshold;
using lowdefect::parse_expression;
using lowdefect::tree_of;

namespace {
const ComplexityTable& table() {
  static auto t = ComplexityTable::build(2000);
  return t;
}
LowDefectPair golden() {
  return LowDefectPair(tree_of(parse_expression("(2x1+1)x2+1")), 4);
}
SubstitutionPattern pat(std::vector<std::optional<std::uint64_t>> v) {
  return SubstitutionPattern(std::move(v));
}
const auto S = std::nullopt;  // star
}  // namespace

TEST_CASE("pattern members") {
  auto m = pattern_members(pat({2, S}), 2);
  CHECK(m == std::vector<std::vector<std::uint64_t>>{{2, 0}, {2, 1}, {2, 2}});
  auto all0 = pattern_members(pat({S, S, S}), 0);
  CHECK(all0 == std::vector<std::vector<std::uint64_t>>{{0, 0, 0}});
  CHECK(pattern_members(pat({5, S}), 2).empty());  // fixed entry outside the box

  // membership test agrees with enumeration
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    unsigned r = 1 + rng() % 3;
    std::vector<std::optional<std::uint64_t>> entries(r);
    for (auto& e : entries)
      if (rng() % 2) e = rng() % 3;
    auto p = pat(entries);
    auto members = pattern_members(p, 2);
    std::set<std::vector<std::uint64_t>> inside(members.begin(), members.end());
    std::vector<std::uint64_t> tuple(r);
    auto scan = [&](auto&& self, unsigned pos) -> void {
      if (pos == r) {
        CHECK(p.matches(tuple) == inside.count(tuple));
        return;
      }
      for (std::uint64_t k = 0; k <= 2; ++k) {
        tuple[pos] = k;
        self(self, pos + 1);
      }
    };
    scan(scan, 0);
  }
}

TEST_CASE("pattern text form") {
  CHECK(pat({0, S}).to_string() == "(pattern 0 *)");
  CHECK(pat({}).to_string() == "(pattern)");
  CHECK(pat({2, 1}).fixed_sum() == 3);
  CHECK(pat({S, S}).all_star());
}

TEST_CASE("direct truncation of the golden pair") {
  auto g = golden();
  auto a = direct_truncate(g, 1, 2);
  CHECK(a.base_complexity() == 10);
  CHECK(a.degree() == 1);
  CHECK(a.polynomial().coefficient(1) == 19);
  CHECK(a.polynomial().coefficient(0) == 1);  // 19x+1
  auto b = direct_truncate(g, 1, 0);
  CHECK(b.base_complexity() == 4);
  CHECK(b.polynomial().coefficient(1) == 3);  // 3x+1
  CHECK_THROWS_AS((void)direct_truncate(g, 2, 0), Error);  // x2 is not minimal
  CHECK_THROWS_AS((void)direct_truncate(g, 3, 0), Error);  // out of range

  // defect strictly decreases, leading coefficient beats a*3^k
  for (std::uint64_t k = 0; k <= 3; ++k) {
    auto d = direct_truncate(g, 1, k);
    CHECK(d.defect() < g.defect());
    CHECK(d.polynomial().leading_coefficient() >
          g.polynomial().leading_coefficient() * lowdefect::pow3(k));
  }
}

TEST_CASE("point defects correspond through direct truncation") {
  auto g = golden();
  for (std::uint64_t k = 0; k <= 2; ++k) {
    auto d = direct_truncate(g, 1, k);
    for (std::uint64_t k2 = 0; k2 <= 3; ++k2) {
      std::vector<std::uint64_t> sub{k2};
      std::vector<std::uint64_t> full{k, k2};
      CHECK(d.defect_at(sub) == g.defect_at(full));
    }
  }
}

TEST_CASE("substitution by pattern") {
  auto g = golden();
  auto c = substitute(g, pat({2, 1}));
  CHECK(c.degree() == 0);
  CHECK(c.polynomial().constant_term() == 58);
  CHECK(c.base_complexity() == 13);

  auto same = substitute(g, pat({S, S}));
  CHECK(same.base_complexity() == 4);
  CHECK(equivalent(same.witness(), g.witness()));

  CHECK_THROWS_AS((void)substitute(g, pat({S, 1})), Error);  // {x2} not downward closed
  CHECK_THROWS_AS((void)substitute(g, pat({S})), Error);     // arity
}

TEST_CASE("substitution commutes across admissible orders") {
  std::mt19937_64 rng(17);
  const auto& t = table();
  for (int i = 0; i < 150; ++i) {
    auto p = oracles::random_pair(rng, 3, t);
    if (p.degree() < 2) continue;
    // random downward-closed set: take all variables below a random cut
    std::vector<std::optional<std::uint64_t>> entries(p.degree());
    auto parents = p.polynomial().nesting_parents();
    for (unsigned v = 1; v <= p.degree(); ++v) {
      bool fix = rng() % 2;
      if (fix) {
        // fix v and everything below it
        std::vector<unsigned> stack{v};
        while (!stack.empty()) {
          unsigned x = stack.back();
          stack.pop_back();
          if (!entries[x - 1]) entries[x - 1] = rng() % 3;
          for (unsigned u = 1; u <= p.degree(); ++u)
            if (parents[u - 1] == x && !entries[u - 1]) stack.push_back(u);
        }
      }
    }
    auto once = substitute(p, SubstitutionPattern(entries));
    // apply the same assignment one variable at a time, in two orders
    auto apply_in_order = [&](bool reverse) {
      LowDefectPair cur = p;
      std::vector<unsigned> orig(p.degree());
      for (unsigned j = 0; j < p.degree(); ++j) orig[j] = j + 1;
      bool progress = true;
      while (progress) {
        progress = false;
        auto minimal = cur.polynomial().minimal_variables();
        if (reverse) std::reverse(minimal.begin(), minimal.end());
        for (unsigned v : minimal) {
          if (!entries[orig[v - 1] - 1]) continue;
          cur = direct_truncate(cur, v, *entries[orig[v - 1] - 1]);
          orig.erase(orig.begin() + (v - 1));
          progress = true;
          break;
        }
      }
      return cur;
    };
    auto forward = apply_in_order(false);
    auto backward = apply_in_order(true);
    CHECK(equivalent(forward.witness(), once.witness()));
    CHECK(equivalent(backward.witness(), once.witness()));
    CHECK(forward.base_complexity() == once.base_complexity());
    CHECK(backward.base_complexity() == once.base_complexity());
  }
}

TEST_CASE("find_K on the golden pair") {
  auto g = golden();
  CHECK(find_K(g, Threshold::parse("48/25")) == 2);
  CHECK_THROWS_AS((void)find_K(g, Threshold::parse("3")), Error);  // above delta(f,C)
  CHECK_THROWS_AS((void)find_K(LowDefectPair::constant(58, 13), Threshold::parse("1")),
                  Error);  // degree 0
  auto nineteen = direct_truncate(g, 1, 2);  // (19x+1, 10)
  CHECK(find_K(nineteen, Threshold::parse("48/25")) == 1);
}

TEST_CASE("golden truncation") {
  auto g = golden();
  auto result = truncate_pair(g, Threshold::parse("1.92"));
  REQUIRE(result.patterns.size() == 4);
  REQUIRE(result.pairs.size() == 4);
  CHECK(result.patterns[0] == pat({0, S}));
  CHECK(result.patterns[1] == pat({1, S}));
  CHECK(result.patterns[2] == pat({2, 0}));
  CHECK(result.patterns[3] == pat({2, 1}));
  // pairs: (3x2+1,4), (7x2+1,7), (20,10), (58,13)
  CHECK(result.pairs[0].polynomial().to_string() == "3x1+1");
  CHECK(result.pairs[0].base_complexity() == 4);
  CHECK(result.pairs[1].polynomial().to_string() == "7x1+1");
  CHECK(result.pairs[1].base_complexity() == 7);
  CHECK(result.pairs[2].polynomial().to_string() == "20");
  CHECK(result.pairs[2].base_complexity() == 10);
  CHECK(result.pairs[3].polynomial().to_string() == "58");
  CHECK(result.pairs[3].base_complexity() == 13);
  // each emitted pair is the substitution of its pattern
  for (std::size_t i = 0; i < result.patterns.size(); ++i) {
    auto sub = substitute(g, result.patterns[i]);
    CHECK(equivalent(sub.witness(), result.pairs[i].witness()));
    CHECK(sub.base_complexity() == result.pairs[i].base_complexity());
  }
}

TEST_CASE("truncation shortcuts") {
  auto g = golden();
  auto nothing = truncate_pair(g, Threshold::parse("3"));
  REQUIRE(nothing.patterns.size() == 1);
  CHECK(nothing.patterns[0].all_star());
  CHECK(nothing.pairs[0].base_complexity() == 4);

  auto empty = truncate_pair(LowDefectPair::constant(58, 13), Threshold::parse("1"));
  CHECK(empty.patterns.empty());  // delta ~ 1.91 >= 1

  auto kept = truncate_pair(LowDefectPair::constant(58, 13), Threshold::parse("1.92"));
  REQUIRE(kept.patterns.size() == 1);
  CHECK(kept.patterns[0] == pat({}));

  // strict mode drops a degree-0 pair exactly at the threshold; closed keeps it
  auto three = LowDefectPair::constant(3, 3);  // defect 0... use (2,2): delta = 2-3log3 2
  auto one = LowDefectPair::constant(1, 1);    // defect exactly 1
  CHECK(truncate_pair(one, Threshold::parse("1")).patterns.empty());
  CHECK(truncate_pair(one, Threshold::parse("1", Threshold::Mode::Closed)).patterns.size() == 1);
  CHECK(truncate_pair(three, Threshold::parse("0")).patterns.empty());
  CHECK(truncate_pair(three, Threshold::parse("0", Threshold::Mode::Closed)).patterns.size() ==
        1);
}

TEST_CASE("truncation oracle equivalence on random pairs") {
  std::mt19937_64 rng(123);
  const auto& t = table();
  const std::uint64_t box = 6;
  int nontrivial = 0;
  for (int i = 0; i < 60; ++i) {
    auto p = oracles::random_pair(rng, 3, t);
    for (auto mode : {Threshold::Mode::Strict, Threshold::Mode::Closed}) {
      auto threshold = oracles::random_threshold(rng, mode);
      auto result = truncate_pair(p, threshold);
      auto brute = oracles::brute_admitted(p, threshold, box);
      auto covered = oracles::pattern_union(result.patterns, box);
      CHECK(covered == brute);
      if (!brute.empty() && brute.size() < (box + 1) * (box + 1)) ++nontrivial;

      // emitted-pair contracts
      for (std::size_t j = 0; j < result.pairs.size(); ++j) {
        const auto& g = result.pairs[j];
        auto order = threshold.compare(g.defect());
        if (g.degree() == 0 && mode == Threshold::Mode::Strict)
          CHECK(order == std::strong_ordering::less);
        else
          CHECK(order != std::strong_ordering::greater);
        CHECK((long long)g.degree() <= std::max(0ll, threshold.floor_value()));
        CHECK(g.base_complexity() ==
              p.base_complexity() + 3 * result.patterns[j].fixed_sum());
        // fixed set downward closed: substitute() would throw otherwise
        auto again = substitute(p, result.patterns[j]);
        CHECK(equivalent(again.witness(), g.witness()));
      }
    }
  }
  CHECK(nontrivial > 20);
}

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "sumsets/group.hpp"

using namespace sumsets;

TEST_CASE("group spec parsing and canonicalization") {
  CHECK(GroupSpec::parse("Z12").invariant_factors == std::vector<int>{12});
  CHECK(GroupSpec::parse("Z2xZ2xZ3").invariant_factors == std::vector<int>{2, 6});
  CHECK(GroupSpec::parse("z2Xz8").invariant_factors == std::vector<int>{2, 8});
  CHECK(GroupSpec::parse("Z6xZ10").invariant_factors == std::vector<int>{2, 30});
  CHECK_THROWS_AS(GroupSpec::parse("Z1"), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse("Z4x"), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse("4xZ2"), std::invalid_argument);
  CHECK(GroupSpec::parse("Z2xZ6").to_string() == "Z2xZ6");
}

TEST_CASE("CRT merge preserves the element-order census") {
  const std::vector<int> raw = {2, 2, 3};
  const GroupSpec canonical = GroupSpec::from_factors(raw);
  REQUIRE(canonical.invariant_factors == std::vector<int>{2, 6});
  Group g(canonical);
  std::map<long long, long long> census;
  for (int x = 0; x < g.order(); ++x) census[g.element_order(x)] += 1;
  CHECK(census == oracle::product_order_census(raw));
}

TEST_CASE("element arithmetic") {
  Group g12("Z12");
  CHECK(g12.add(7, 8) == 3);
  CHECK(g12.neg(5) == 7);
  Group g26("Z2xZ6");
  const int x = g26.index_of({1, 2});
  CHECK(g26.neg(x) == g26.index_of({1, 4}));
  Group g53("Z53");
  CHECK(g53.scalar_mul(3, 7) == 21);
  CHECK(g53.scalar_mul(-1, 7) == g53.neg(7));
}

TEST_CASE("group axioms hold elementwise") {
  for (const char* spec : {"Z9", "Z2xZ6", "Z2xZ2xZ4"}) {
    Group g(spec);
    for (int x = 0; x < g.order(); ++x) {
      REQUIRE(g.add(x, g.neg(x)) == 0);
      REQUIRE(g.scalar_mul(g.order(), x) == 0);
      for (int y = 0; y < g.order(); ++y) REQUIRE(g.add(x, y) == g.add(y, x));
    }
  }
}

TEST_CASE("mask shifting agrees with elementwise addition") {
  for (const char* spec : {"Z10", "Z2xZ2xZ4", "Z3xZ6"}) {
    Group g(spec);
    const int n = g.order();
    const SubsetMask a(n, 0x5b3 & universe_word(n));
    for (int t = 0; t < n; ++t) {
      SubsetMask expected = SubsetMask::empty_set(n);
      for (int e : a.elements()) expected.set(g.add(e, t));
      REQUIRE(g.shift(a, t) == expected);
    }
  }
}

TEST_CASE("subgroup enumeration") {
  CHECK(Group("Z4").subgroups().size() == 3);
  CHECK(Group("Z2xZ2").subgroups().size() == 5);
  CHECK(Group("Z15").subgroups().size() == 4);
  CHECK(Group("Z2xZ2xZ2").subgroups().size() == 16);  // 1 + 7 + 7 + 1 subspaces

  Group g("Z2xZ12");
  for (const auto& h : g.subgroups()) {
    CHECK(g.is_subgroup_mask(h.elements));
    CHECK(h.order == h.elements.count());
    CHECK(g.order() % h.order == 0);  // Lagrange
  }
}

TEST_CASE("subgroup closure") {
  Group g("Z12");
  CHECK(g.closure(SubsetMask::singleton(12, 4)) == SubsetMask::of(12, {0, 4, 8}));
  CHECK(g.closure(SubsetMask::of(12, {4, 6})) == SubsetMask::of(12, {0, 2, 4, 6, 8, 10}));
  CHECK(g.closure(SubsetMask::empty_set(12)) == SubsetMask::singleton(12, 0));
}

TEST_CASE("involution counts") {
  CHECK(involution_count(GroupSpec::parse("Z12")) == 2);
  CHECK(involution_count(GroupSpec::parse("Z15")) == 1);
  CHECK(involution_count(GroupSpec::parse("Z2xZ2xZ2xZ2")) == 16);
  CHECK(involution_count(GroupSpec::parse("Z2xZ6")) == 4);
}

TEST_CASE("element orders and exponent") {
  Group g("Z2xZ6");
  int max_order = 0;
  for (int x = 0; x < g.order(); ++x) max_order = std::max(max_order, g.element_order(x));
  CHECK(max_order == g.exponent());
  CHECK(g.element_order(0) == 1);
}

TEST_CASE("automorphism groups have the right size") {
  CHECK(Group("Z12").automorphisms().size() == 4);   // phi(12)
  CHECK(Group("Z2xZ2").automorphisms().size() == 6);  // GL(2,2)
  CHECK(Group("Z3xZ3").automorphisms().size() == 48); // GL(2,3)
  CHECK(Group("Z2xZ4").automorphisms().size() == 8);

  Group g("Z2xZ4");
  for (const auto& phi : g.automorphisms()) {
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y) REQUIRE(phi[g.add(x, y)] == g.add(phi[x], phi[y]));
  }
}

TEST_CASE("cyclic multipliers are exactly the units") {
  Group g("Z10");
  CHECK(g.cyclic_multipliers() == std::vector<int>{1, 3, 7, 9});
  CHECK_THROWS_AS(Group("Z2xZ2").cyclic_multipliers(), std::invalid_argument);
}

TEST_CASE("group enumeration is complete and canonical") {
  const auto groups = enumerate_groups(16);
  long long count16 = 0;
  for (const auto& g : groups) {
    if (g.order() == 16) ++count16;
    for (std::size_t i = 0; i + 1 < g.invariant_factors.size(); ++i)
      CHECK(g.invariant_factors[i + 1] % g.invariant_factors[i] == 0);
  }
  CHECK(count16 == 5);  // partitions of 4
  CHECK(groups.front().to_string() == "Z2");

  // abelian group counts by order, 2..16
  std::map<long long, int> per_order;
  for (const auto& g : groups) per_order[g.order()] += 1;
  CHECK(per_order[4] == 2);
  CHECK(per_order[8] == 3);
  CHECK(per_order[9] == 2);
  CHECK(per_order[12] == 2);
  CHECK(per_order[15] == 1);
  CHECK(groups.size() == 24);  // sum of abelian group counts for n = 2..16
}

TEST_CASE("order cap") {
  CHECK_NOTHROW(Group("Z64"));
  CHECK_THROWS_AS(Group("Z65"), cap_exceeded);
}

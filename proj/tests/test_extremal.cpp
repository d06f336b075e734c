#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "sumsets/extremal.hpp"
#include "sumsets/formulas.hpp"

using namespace sumsets;

namespace {
const SumsetKind kAllKinds[] = {SumsetKind::Plain, SumsetKind::Restricted, SumsetKind::Signed,
                                SumsetKind::RestrictedSigned};

// how the elements of A fall across the cosets of the subgroup generated by g0
std::vector<int> coset_histogram(const Group& g, const SubsetMask& A, int g0) {
  const SubsetMask h = g.closure(SubsetMask::singleton(g.order(), g0));
  std::vector<int> counts;
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  for (int x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    const SubsetMask coset = g.shift(h, x);
    for (int e : coset.elements()) seen[static_cast<std::size_t>(e)] = true;
    counts.push_back((A & coset).count());
  }
  std::sort(counts.rbegin(), counts.rend());
  return counts;
}
}  // namespace

TEST_CASE("rho scans agree with combination enumeration") {
  for (const char* spec : {"Z8", "Z2xZ4", "Z3xZ3", "Z7"}) {
    Group g(spec);
    const int n = g.order();
    for (SumsetKind kind : kAllKinds) {
      RhoTable t = rho_scan(g, n, 3, kind);
      for (int m = 1; m <= n; ++m)
        for (int h = 1; h <= 3; ++h) {
          auto naive = oracle::naive_rho(g, m, h, kind);
          CAPTURE(spec, m, h, static_cast<int>(kind));
          REQUIRE(t.value(m, h) == naive.value);
          REQUIRE(t.witness(m, h) == naive.witness);  // lexicographically smallest minimizer
        }
    }
  }
}

TEST_CASE("rho scan is deterministic across job counts") {
  Group g("Z2xZ10");
  for (SumsetKind kind : {SumsetKind::Plain, SumsetKind::Signed}) {
    RhoTable serial = rho_scan(g, g.order(), 3, kind, 1);
    RhoTable parallel = rho_scan(g, g.order(), 3, kind, 8);
    for (int m = 1; m <= g.order(); ++m)
      for (int h = 1; h <= 3; ++h) {
        REQUIRE(serial.value(m, h) == parallel.value(m, h));
        REQUIRE(serial.witness(m, h) == parallel.witness(m, h));
      }
  }
}

TEST_CASE("minimum sumset sizes in Z15") {
  Group g("Z15");
  CHECK(rho_brute(g, 6, 2, SumsetKind::Plain).value == 9);
  CHECK(rho_brute(g, 7, 2, SumsetKind::Plain).value == 13);
}

TEST_CASE("signed minimum differs from plain exactly at the Z3xZ3 cell") {
  Group g("Z3xZ3");
  CHECK(rho_brute(g, 4, 2, SumsetKind::Signed).value == 8);
  CHECK(rho_brute(g, 4, 2, SumsetKind::Plain).value == 7);
  RhoTable signed_t = rho_scan(g, 9, 3, SumsetKind::Signed);
  for (int m = 1; m <= 9; ++m)
    for (int h = 1; h <= 3; ++h) {
      if (m == 4 && h == 2) continue;
      REQUIRE(signed_t.value(m, h) == *rho_formula(9, m, h).value);
    }
}

TEST_CASE("restricted minimum in Z7") {
  Group g("Z7");
  CHECK(rho_brute(g, 3, 2, SumsetKind::Restricted).value == 3);
}

TEST_CASE("signed equals plain for cyclic groups") {
  for (const char* spec : {"Z6", "Z9", "Z12", "Z14"}) {
    Group g(spec);
    RhoTable signed_t = rho_scan(g, g.order(), 3, SumsetKind::Signed);
    for (int m = 1; m <= g.order(); ++m)
      for (int h = 1; h <= 3; ++h) REQUIRE(signed_t.value(m, h) == *rho_formula(g.order(), m, h).value);
  }
}

TEST_CASE("restricted minimum is rho - 1 in elementary 2-groups") {
  for (const char* spec : {"Z2", "Z2xZ2", "Z2xZ2xZ2"}) {
    Group g(spec);
    RhoTable t = rho_scan(g, g.order(), 2, SumsetKind::Restricted);
    for (int m = 1; m <= g.order(); ++m) REQUIRE(t.value(m, 2) == *rho_formula(g.order(), m, 2).value - 1);
  }
}

TEST_CASE("optimizers of rho(Z15,6,2) are unions of two cosets of the order-3 subgroup") {
  Group g("Z15");
  auto census = enumerate_optimizers(g, 6, 2, SumsetKind::Plain);
  CHECK(census.value == 9);
  REQUIRE_FALSE(census.witnesses.empty());
  for (const auto& w : census.witnesses) {
    // A + 5 = A exactly when A is a union of cosets of {0,5,10}
    REQUIRE(g.shift(w, 5) == w);
  }
}

TEST_CASE("optimizers of rho(Z15,7,2) come in the three known shapes") {
  Group g("Z15");
  auto census = enumerate_optimizers(g, 7, 2, SumsetKind::Plain);
  CHECK(census.value == 13);
  bool saw_two_cosets_plus_one = false, saw_coset5_plus_two = false, saw_ap = false;
  for (std::size_t i = 0; i < census.witnesses.size(); ++i) {
    const auto& w = census.witnesses[i];
    const auto h3 = coset_histogram(g, w, 5);   // cosets of {0,5,10}
    const auto h5 = coset_histogram(g, w, 3);   // cosets of {0,3,6,9,12}
    const bool two_cosets_plus_one = h3 == std::vector<int>{3, 3, 1, 0, 0};
    const bool coset5_plus_two = h5 == std::vector<int>{5, 2, 0};
    const bool ap = census.witness_classes[i].is_ap;
    saw_two_cosets_plus_one = saw_two_cosets_plus_one || two_cosets_plus_one;
    saw_coset5_plus_two = saw_coset5_plus_two || coset5_plus_two;
    saw_ap = saw_ap || ap;
    CAPTURE(w.to_string());
    REQUIRE((two_cosets_plus_one || coset5_plus_two || ap));
  }
  CHECK(saw_two_cosets_plus_one);
  CHECK(saw_coset5_plus_two);
  CHECK(saw_ap);
}

TEST_CASE("prime-order optimizers below the threshold are progressions") {
  Group g("Z11");
  auto census = enumerate_optimizers(g, 3, 2, SumsetKind::Plain);
  CHECK(census.value == 5);
  REQUIRE_FALSE(census.witnesses.empty());
  for (const auto& fl : census.witness_classes) REQUIRE(fl.is_ap);
}

TEST_CASE("whole group is the unique maximal subset") {
  Group g("Z5");
  auto census = enumerate_optimizers(g, 5, 2, SumsetKind::Plain);
  REQUIRE(census.witnesses.size() == 1);
  CHECK(census.witnesses.front() == SubsetMask::full_set(5));
}

TEST_CASE("structure classification") {
  Group g10("Z10");
  const auto odd = classify_set(g10, SubsetMask::of(10, {1, 3, 5, 7, 9}));
  CHECK(odd.is_ap);
  CHECK(odd.ap_difference == 2);

  Group g9("Z9");
  const auto sub = classify_set(g9, SubsetMask::of(9, {0, 3, 6}));
  REQUIRE(sub.coset_subgroup.has_value());
  CHECK(sub.coset_subgroup->order == 3);
  CHECK(sub.symmetry == Symmetry::Symmetric);

  Group g7("Z7");
  const auto asym = classify_set(g7, SubsetMask::of(7, {1, 2, 3}));
  CHECK(asym.symmetry == Symmetry::Asymmetric);
  CHECK(asym.is_ap);

  const auto near = classify_set(g7, SubsetMask::of(7, {1, 2, 6}));
  CHECK(near.symmetry == Symmetry::NearSymmetric);

  Group g8("Z8");
  const auto quad = classify_set(g8, SubsetMask::of(8, {0, 1, 4, 5}));
  CHECK(quad.is_quad);
  const auto nonquad = classify_set(g8, SubsetMask::of(8, {0, 1, 2, 4}));
  CHECK_FALSE(nonquad.is_quad);

  CHECK_FALSE(classify_set(g10, SubsetMask::of(10, {0, 1, 3, 7})).is_ap);
  CHECK(classify_set(g10, SubsetMask::singleton(10, 4)).is_ap);
}

TEST_CASE("canonical translates start at zero") {
  Group g("Z12");
  const SubsetMask a = SubsetMask::of(12, {3, 4, 7});
  const SubsetMask canon = canonical_translate(g, a);
  CHECK(canon.test(0));
  CHECK(canon == SubsetMask::of(12, {0, 1, 4}));  // shift by -3, the lex smallest
}

TEST_CASE("caps are enforced") {
  Group g("Z53");
  CHECK_THROWS_AS(rho_scan(g, 4, 2, SumsetKind::Plain), cap_exceeded);
  CHECK_THROWS_AS(enumerate_optimizers(g, 4, 2, SumsetKind::Plain), cap_exceeded);
}

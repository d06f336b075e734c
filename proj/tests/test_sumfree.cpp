#include <catch2/catch_amalgamated.hpp>

#include "sumsets/formulas.hpp"
#include "sumsets/group.hpp"
#include "sumsets/sumfree.hpp"

using namespace sumsets;

TEST_CASE("(k,l)-sumfree predicate") {
  Group g10("Z10");
  CHECK(is_kl_sumfree(g10, SubsetMask::of(10, {1, 3, 5, 7, 9}), {2, 1}));
  Group g8("Z8");
  CHECK(is_kl_sumfree(g8, SubsetMask::of(8, {1, 2}), {3, 1}));
  CHECK_FALSE(is_kl_sumfree(g8, SubsetMask::of(8, {0, 3}), {3, 1}));  // 0 is in every fold
  CHECK_FALSE(is_kl_sumfree(g10, SubsetMask::of(10, {2, 4}), {2, 1}));
}

TEST_CASE("maximum sumfree sizes") {
  CHECK(mu_brute(Group("Z10"), {2, 1}).value == 5);
  CHECK(mu_brute(Group("Z8"), {3, 1}).value == 2);
  CHECK(mu_brute(Group("Z2"), {2, 1}).value == 1);
  auto z10 = mu_brute(Group("Z10"), {2, 1});
  bool found_odds = false;
  for (const auto& w : z10.witnesses) found_odds = found_odds || w == SubsetMask::of(10, {1, 3, 5, 7, 9});
  CHECK(found_odds);
  for (const auto& w : z10.witnesses) REQUIRE(is_kl_sumfree(Group("Z10"), w, {2, 1}));
}

TEST_CASE("interval and progression maxima") {
  CHECK(gamma_interval(10, {2, 1}) == 3);
  CHECK(gamma_interval(2, {2, 1}) == 1);
  CHECK(gamma_interval(1, {2, 1}) == 0);
  long long start = -1;
  CHECK(gamma_interval(10, {2, 1}, &start) == 3);
  // the returned witness interval really is sumfree
  Group g10("Z10");
  SubsetMask interval = SubsetMask::empty_set(10);
  for (int i = 0; i < 3; ++i) interval.set(static_cast<int>((start + i) % 10));
  CHECK(is_kl_sumfree(g10, interval, {2, 1}));

  for (int d = 1; d <= 12; ++d)
    for (SumfreeParams p : {SumfreeParams{2, 1}, {3, 1}, {3, 2}, {4, 1}})
      REQUIRE(alpha_progression(d, p) >= gamma_interval(d, p));
}

TEST_CASE("interval reduction") {
  CHECK(mu_via_gamma(10, {2, 1}) == 5);
  CHECK(mu_via_gamma(8, {3, 1}) == 2);
  for (int p : {5, 7, 11, 13}) REQUIRE(mu_via_gamma(p, {2, 1}) == gamma_interval(p, {2, 1}));
}

TEST_CASE("brute, formula, and reduction agree on cyclic groups up to 14") {
  for (int n = 2; n <= 14; ++n) {
    Group g(GroupSpec::cyclic(n));
    for (SumfreeParams p : {SumfreeParams{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 1}}) {
      const int brute = mu_brute(g, p, false).value;
      CAPTURE(n, p.k, p.l);
      REQUIRE(brute == *mu_formula(n, p.k, p.l).value);
      REQUIRE(brute == mu_via_gamma(n, p));
    }
  }
}

TEST_CASE("Green-Ruzsa agreement and attainment for all groups up to 16") {
  for (const auto& spec : enumerate_groups(16)) {
    Group g(spec);
    const auto f = mu_sumfree_group(spec);
    CAPTURE(spec.to_string());
    REQUIRE(mu_brute(g, {2, 1}, false).value == *f.value);
    const SubsetMask built = middle_third_construction(g, static_cast<int>(*f.achieving_divisor));
    REQUIRE(built.count() == *f.value);
    if (!built.none()) REQUIRE(is_kl_sumfree(g, built, {2, 1}));
  }
}

TEST_CASE("maximum sumfree sets in Z_p are progressions for k >= 3") {
  for (int p : {7, 11, 13}) {
    Group g(GroupSpec::cyclic(p));
    for (SumfreeParams params : {SumfreeParams{3, 1}, {4, 1}, {3, 2}}) {
      if (p % (params.k - params.l) == 0) continue;
      auto r = mu_brute(g, params);
      CAPTURE(p, params.k, params.l);
      REQUIRE(r.value == (p - 2) / (params.k + params.l) + 1);
      for (const auto& fl : r.witness_classes) REQUIRE(fl.is_ap);
    }
  }
}

TEST_CASE("critical numbers") {
  CHECK(chi_brute(Group("Z10"), 2) == 6);
  CHECK(chi_brute(Group("Z12"), 3) == 7);
  CHECK(chi_brute(Group("Z12"), 2, SumsetKind::Restricted) == 8);
  CHECK(chi_brute(Group("Z5"), 1) == 5);
  CHECK_THROWS_AS(chi_brute(Group("Z10"), 2, SumsetKind::Signed), std::invalid_argument);

  for (const auto& spec : enumerate_groups(12)) {
    Group g(spec);
    for (int h = 1; h <= 4; ++h) {
      CAPTURE(spec.to_string(), h);
      REQUIRE(chi_brute(g, h) == *chi_formula(g.order(), h).value);
    }
  }
}

TEST_CASE("restricted critical number in elementary 2-groups is degenerate") {
  // no restricted 2-fold sumset ever reaches 0, so every subset is incomplete
  CHECK(chi_brute(Group("Z2xZ2"), 2, SumsetKind::Restricted) == 5);
  CHECK(chi_brute(Group("Z2xZ2xZ2"), 2, SumsetKind::Restricted) == 9);
  // the floor(n/2)+2 closed form is a cyclic-group statement
  CHECK(chi_brute(Group("Z4"), 2, SumsetKind::Restricted) == chi_hat2(4));
}

TEST_CASE("spectra of maximum incomplete sets") {
  auto z12 = spectrum_brute(Group("Z12"), 2);
  CHECK(z12.chi == 7);
  CHECK(z12.sizes == std::vector<long long>{6, 9, 10, 11});

  auto z11 = spectrum_brute(Group("Z11"), 2);
  CHECK(z11.sizes == std::vector<long long>{9, 10});

  auto z22 = spectrum_brute(Group("Z2xZ2"), 2);
  CHECK(z22.sizes == std::vector<long long>{2});

  auto z8r = spectrum_brute(Group("Z8"), 2, SumsetKind::Restricted);
  CHECK(z8r.sizes == std::vector<long long>{7});
  auto z12r = spectrum_brute(Group("Z12"), 2, SumsetKind::Restricted);
  CHECK(z12r.sizes == std::vector<long long>{10, 11});

  long long total = 0;
  for (const auto& [size, count] : z12.census) total += count;
  CHECK(total > 0);
}

TEST_CASE("spectrum formulas match brute force on small groups") {
  for (const auto& spec : enumerate_groups(12)) {
    Group g(spec);
    auto s2 = S2_formula(spec);
    auto brute2 = spectrum_brute(g, 2);
    CAPTURE(spec.to_string());
    if (s2.applicable)
      REQUIRE(std::set<long long>(brute2.sizes.begin(), brute2.sizes.end()) == s2.sizes);
    auto s3 = S3_formula(spec);
    auto brute3 = spectrum_brute(g, 3);
    if (s3.applicable)
      REQUIRE(std::set<long long>(brute3.sizes.begin(), brute3.sizes.end()) == s3.sizes);
  }
}

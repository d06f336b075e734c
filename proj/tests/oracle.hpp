#pragma once

// Test-only reference implementations. Everything here enumerates coefficient
// vectors one at a time instead of running the engine's layered DP, so the two
// paths can check each other.

#include <functional>
#include <map>
#include <vector>

#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"
#include "sumsets/sumset.hpp"

namespace oracle {

using sumsets::Group;
using sumsets::SubsetMask;
using sumsets::SumsetKind;

// Calls f(sum) once per admissible coefficient vector over elems with total
// budget exactly `budget`.
inline void for_each_vector_exact(const Group& g, const std::vector<int>& elems, int budget, SumsetKind kind,
                                  const std::function<void(int)>& f) {
  const std::size_t m = elems.size();
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int sum) {
    if (i == m) {
      if (left == 0) f(sum);
      return;
    }
    const int a = elems[i];
    switch (kind) {
      case SumsetKind::Plain:
        for (int t = 0; t <= left; ++t) rec(i + 1, left - t, g.add(sum, g.scalar_mul(t, a)));
        break;
      case SumsetKind::Restricted:
        rec(i + 1, left, sum);
        if (left >= 1) rec(i + 1, left - 1, g.add(sum, a));
        break;
      case SumsetKind::Signed:
        rec(i + 1, left, sum);
        for (int t = 1; t <= left; ++t) {
          rec(i + 1, left - t, g.add(sum, g.scalar_mul(t, a)));
          rec(i + 1, left - t, g.add(sum, g.scalar_mul(-t, a)));
        }
        break;
      case SumsetKind::RestrictedSigned:
        rec(i + 1, left, sum);
        if (left >= 1) {
          rec(i + 1, left - 1, g.add(sum, a));
          rec(i + 1, left - 1, g.add(sum, g.neg(a)));
        }
        break;
    }
  };
  rec(0, budget, 0);
}

inline SubsetMask naive_sumset(const Group& g, const SubsetMask& A, int h, SumsetKind kind) {
  SubsetMask out = SubsetMask::empty_set(g.order());
  for_each_vector_exact(g, A.elements(), h, kind, [&](int sum) { out.set(sum); });
  return out;
}

inline std::vector<long long> naive_rep_counts(const Group& g, const SubsetMask& A, int s, SumsetKind kind) {
  std::vector<long long> counts(static_cast<std::size_t>(g.order()), 0);
  for (int b = 0; b <= s; ++b)
    for_each_vector_exact(g, A.elements(), b, kind, [&](int sum) { counts[static_cast<std::size_t>(sum)] += 1; });
  return counts;
}

// All m-element combinations of 0..n-1 in lexicographic order.
inline void for_each_combination(int n, int m, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (m > n) return;
  while (true) {
    f(idx);
    int i = m - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

struct NaiveExtremal {
  int value = 0;
  SubsetMask witness;
};

inline NaiveExtremal naive_rho(const Group& g, int m, int h, SumsetKind kind) {
  NaiveExtremal best;
  best.value = g.order() + 1;
  for_each_combination(g.order(), m, [&](const std::vector<int>& idx) {
    const SubsetMask A = SubsetMask::from_elements(g.order(), idx);
    const int size = naive_sumset(g, A, h, kind).count();
    if (size < best.value) {
      best.value = size;
      best.witness = A;
    }
  });
  return best;
}

// Element-order census through an explicit direct-product table, bypassing
// the canonical invariant-factor machinery.
inline std::map<long long, long long> product_order_census(const std::vector<int>& factors) {
  long long n = 1;
  for (int f : factors) n *= f;
  std::map<long long, long long> census;
  for (long long x = 0; x < n; ++x) {
    long long rem = x, ord = 1;
    for (int f : factors) {
      const long long c = rem % f;
      rem /= f;
      ord = std::lcm(ord, c == 0 ? 1 : f / std::gcd(static_cast<long long>(f), c));
    }
    census[ord] += 1;
  }
  return census;
}

}  // namespace oracle

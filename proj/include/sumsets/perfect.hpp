#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sumsets/formulas.hpp"
#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

/// Unique-representation structures: each element of G written exactly once
/// as a sum of at most s elements of A under the matching discipline.
enum class PerfectKind { Basis, RestrictedBasis, Spanning, RestrictedSpanning };

inline SumsetKind to_sumset_kind(PerfectKind k) {
  switch (k) {
    case PerfectKind::Basis: return SumsetKind::Plain;
    case PerfectKind::RestrictedBasis: return SumsetKind::Restricted;
    case PerfectKind::Spanning: return SumsetKind::Signed;
    case PerfectKind::RestrictedSpanning: return SumsetKind::RestrictedSigned;
  }
  return SumsetKind::Plain;
}

inline const char* perfect_kind_name(PerfectKind k) {
  switch (k) {
    case PerfectKind::Basis: return "basis";
    case PerfectKind::RestrictedBasis: return "restricted-basis";
    case PerfectKind::Spanning: return "spanning";
    case PerfectKind::RestrictedSpanning: return "restricted-spanning";
  }
  return "?";
}

/// True iff every element of G has exactly one representation as a budget-<=s
/// combination of A.
inline bool is_perfect(const Group& g, const SubsetMask& A, int s, PerfectKind kind) {
  if (s < 1) throw std::invalid_argument("perfection needs s >= 1");
  const auto counts = rep_counts(g, A, s, to_sumset_kind(kind));
  for (long long c : counts)
    if (c != 1) return false;
  return true;
}

struct PerfectSearchReport {
  GroupSpec group;
  int s = 0;
  PerfectKind kind = PerfectKind::Basis;
  std::vector<int> capacity_admissible_m;  // m with capacity(kind, m, s) == |G|
  std::vector<SubsetMask> found;           // all perfect sets, sorted
  bool exhausted = false;
};

namespace detail {

// Representation-count layer transition for one added element; dst = src
// after the element joins the set. Arrays are (s+1) x n, budget-major.
inline void advance_counts(const Group& g, SumsetKind kind, const std::uint32_t* src, std::uint32_t* dst, int s,
                           int a) {
  const int n = g.order();
  const int neg_a = g.neg(a);
  std::copy(src, src + static_cast<std::size_t>(s + 1) * n, dst);
  for (int b = 0; b <= s; ++b) {
    const std::uint32_t* row = src + static_cast<std::size_t>(b) * n;
    for (int x = 0; x < n; ++x) {
      const std::uint32_t c = row[x];
      if (c == 0) continue;
      switch (kind) {
        case SumsetKind::Plain: {
          int y = x;
          for (int j = 1; b + j <= s; ++j) {
            y = g.add(y, a);
            dst[static_cast<std::size_t>(b + j) * n + y] += c;
          }
          break;
        }
        case SumsetKind::Restricted:
          if (b + 1 <= s) dst[static_cast<std::size_t>(b + 1) * n + g.add(x, a)] += c;
          break;
        case SumsetKind::Signed: {
          int y = x, z = x;
          for (int j = 1; b + j <= s; ++j) {
            y = g.add(y, a);
            z = g.add(z, neg_a);
            dst[static_cast<std::size_t>(b + j) * n + y] += c;
            dst[static_cast<std::size_t>(b + j) * n + z] += c;
          }
          break;
        }
        case SumsetKind::RestrictedSigned:
          if (b + 1 <= s) {
            dst[static_cast<std::size_t>(b + 1) * n + g.add(x, a)] += c;
            dst[static_cast<std::size_t>(b + 1) * n + g.add(x, neg_a)] += c;
          }
          break;
      }
    }
  }
}

// Some element already has two representations; such a set can never grow
// into a perfect one, so the search prunes on it.
inline bool has_duplicate(const std::uint32_t* counts, int s, int n) {
  for (int x = 0; x < n; ++x) {
    std::uint32_t total = 0;
    for (int b = 0; b <= s; ++b) total += counts[static_cast<std::size_t>(b) * n + x];
    if (total > 1) return true;
  }
  return false;
}

}  // namespace detail

/// Searches G for perfect structures of the given kind and budget. The size
/// filter capacity(kind, m, s) == |G| runs first; candidate sizes are then
/// scanned exhaustively with duplicate-representation pruning.
inline PerfectSearchReport find_perfect(const Group& g, int s, PerfectKind kind, int order_cap = 64) {
  if (s < 1) throw std::invalid_argument("perfection needs s >= 1");
  const int n = g.order();
  if (n > order_cap) throw cap_exceeded("perfect search cap exceeded: order " + std::to_string(n));

  PerfectSearchReport report;
  report.group = g.spec();
  report.s = s;
  report.kind = kind;

  for (int m = 1; m <= n; ++m) {
    const long long cap = capacity(to_sumset_kind(kind), m, s);
    if (cap == n) report.capacity_admissible_m.push_back(m);
    if (cap > n) break;  // capacity is strictly increasing in m
  }

  const SumsetKind sk = to_sumset_kind(kind);
  for (int m : report.capacity_admissible_m) {
    std::vector<std::uint32_t> stack(static_cast<std::size_t>(m + 1) * (s + 1) * n, 0);
    stack[0] = 1;  // empty sum reaches 0 once
    const std::size_t level = static_cast<std::size_t>(s + 1) * n;
    std::uint64_t mask = 0;
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == m) {
        report.found.emplace_back(n, mask);  // no duplicates and full capacity: counts are all ones
        return;
      }
      const std::uint32_t* src = stack.data() + static_cast<std::size_t>(depth) * level;
      std::uint32_t* dst = stack.data() + static_cast<std::size_t>(depth + 1) * level;
      for (int i = start; i <= n - (m - depth); ++i) {
        detail::advance_counts(g, sk, src, dst, s, i);
        if (detail::has_duplicate(dst, s, n)) continue;
        mask |= std::uint64_t{1} << i;
        self(self, i + 1, depth + 1);
        mask &= ~(std::uint64_t{1} << i);
      }
    };
    rec(rec, 0, 0);
  }
  std::sort(report.found.begin(), report.found.end(), SubsetMask::lex_less);
  report.exhausted = true;
  return report;
}

/// Collapses a census to one representative per automorphism orbit.
inline std::vector<SubsetMask> dedup_up_to_automorphism(const Group& g, const std::vector<SubsetMask>& sets,
                                                        long long candidate_cap = 4'000'000) {
  const auto auts = g.automorphisms(candidate_cap);
  std::vector<SubsetMask> out;
  std::vector<std::uint64_t> seen;
  for (const auto& A : sets) {
    SubsetMask canon = A;
    for (const auto& phi : auts) {
      SubsetMask img = g.apply_perm(A, phi);
      if (SubsetMask::lex_less(img, canon)) canon = img;
    }
    if (std::find(seen.begin(), seen.end(), canon.word()) == seen.end()) {
      seen.push_back(canon.word());
      out.push_back(canon);
    }
  }
  std::sort(out.begin(), out.end(), SubsetMask::lex_less);
  return out;
}

/// The disjointness by-product behind the perfect-basis classification: for a
/// perfect s-basis the s+1 sets -A, A-A, 2A-A, ..., (s-1)A-A, (s-1)A must be
/// pairwise disjoint.
inline bool basis_disjointness_check(const Group& g, const SubsetMask& A, int s) {
  if (s < 1) throw std::invalid_argument("needs s >= 1");
  const auto layers = sumset_layers(g, A, std::max(s - 1, 0), SumsetKind::Plain);
  std::vector<SubsetMask> sets;
  for (int h = 0; h <= s - 1; ++h) sets.push_back(diff_set(g, layers[static_cast<std::size_t>(h)], A));
  sets.push_back(layers[static_cast<std::size_t>(s - 1)]);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (sets[i].intersects(sets[j])) return false;
  return true;
}

}  // namespace sumsets

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "sumsets/extremal.hpp"
#include "sumsets/formulas.hpp"
#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

inline constexpr int kDefaultMuCap = 24;
inline constexpr int kDefaultChiCap = 18;
inline constexpr int kDefaultChiRestrictedCap = 16;

struct SumfreeParams {
  int k = 2;
  int l = 1;
};

inline void check_params(const SumfreeParams& p) {
  if (p.k <= p.l || p.l < 1) throw std::invalid_argument("(k,l)-sumfree needs k > l >= 1");
}

/// kA and lA disjoint (plain folding).
inline bool is_kl_sumfree(const Group& g, const SubsetMask& A, const SumfreeParams& p) {
  check_params(p);
  const auto layers = sumset_layers(g, A, p.k, SumsetKind::Plain);
  return !layers[static_cast<std::size_t>(p.k)].intersects(layers[static_cast<std::size_t>(p.l)]);
}

/// Maximum size of a (k,l)-sumfree subset, with the full census of maximum
/// sets. One depth-first pass over the sumfree down-set finds the value; a
/// second pass collects the witnesses.
inline ExtremalResult mu_brute(const Group& g, const SumfreeParams& p, bool collect_witnesses = true,
                               int cap = kDefaultMuCap) {
  check_params(p);
  const int n = g.order();
  if (n > cap) throw cap_exceeded("mu scan cap exceeded: order " + std::to_string(n));

  const int layers = p.k + 1;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(n + 1) * layers, 0);
  stack[0] = 1;

  int best = 0;
  auto value_dfs = [&](auto&& self, int start, int depth) -> void {
    best = std::max(best, depth);
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(depth) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(depth + 1) * layers;
    for (int i = start; i < n; ++i) {
      if (depth + (n - i) <= best) break;  // not enough elements left to improve
      SumsetDP::advance(g, SumsetKind::Plain, src, dst, p.k, i);
      if ((dst[p.k] & dst[p.l]) != 0) continue;  // supersets stay non-sumfree
      self(self, i + 1, depth + 1);
    }
  };
  value_dfs(value_dfs, 0, 0);

  ExtremalResult r;
  r.value = best;
  r.exhaustive = true;
  if (!collect_witnesses || best == 0) {
    if (collect_witnesses && best == 0) {
      r.witnesses.push_back(SubsetMask::empty_set(n));
      r.witness_classes.push_back(StructureFlags{});
    }
    return r;
  }

  std::uint64_t mask = 0;
  auto collect_dfs = [&](auto&& self, int start, int depth) -> void {
    if (depth == best) {
      r.witnesses.emplace_back(n, mask);
      return;
    }
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(depth) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(depth + 1) * layers;
    for (int i = start; i <= n - (best - depth); ++i) {
      SumsetDP::advance(g, SumsetKind::Plain, src, dst, p.k, i);
      if ((dst[p.k] & dst[p.l]) != 0) continue;
      mask |= std::uint64_t{1} << i;
      self(self, i + 1, depth + 1);
      mask &= ~(std::uint64_t{1} << i);
    }
  };
  collect_dfs(collect_dfs, 0, 0);
  r.witness_classes.reserve(r.witnesses.size());
  for (const auto& w : r.witnesses) r.witness_classes.push_back(classify_set(g, w));
  return r;
}

/// Size of the largest (k,l)-sumfree run of consecutive residues in Z_d,
/// by exact circular-interval arithmetic (no masks, any d). When start_out is
/// given it receives the starting residue of one maximal run.
inline long long gamma_interval(long long d, const SumfreeParams& p, long long* start_out = nullptr) {
  check_params(p);
  if (d < 1) throw std::invalid_argument("need d >= 1");
  auto intervals_disjoint = [&](long long s1, long long len1, long long s2, long long len2) {
    if (len1 >= d || len2 >= d) return false;
    long long off = ((s2 - s1) % d + d) % d;
    if (off < len1) return false;
    long long back = ((s1 - s2) % d + d) % d;
    return back >= len2;
  };
  for (long long m = d; m >= 1; --m) {
    for (long long a = 0; a < d; ++a) {
      // kA spans k*a .. k*a + k(m-1); lA spans l*a .. l*a + l(m-1)
      if (intervals_disjoint(p.k * a % d, static_cast<long long>(p.k) * (m - 1) + 1, p.l * a % d,
                             static_cast<long long>(p.l) * (m - 1) + 1)) {
        if (start_out) *start_out = a;
        return m;
      }
    }
  }
  return 0;
}

/// Size of the largest (k,l)-sumfree arithmetic progression in Z_d.
inline int alpha_progression(int d, const SumfreeParams& p) {
  check_params(p);
  Group g(GroupSpec::cyclic(d));
  int best = 0;
  for (int b = 0; b < d; ++b) {
    const int run = b == 0 ? 1 : d / std::gcd(b, d);  // longest AP with distinct elements
    for (int a = 0; a < d; ++a) {
      SubsetMask A = SubsetMask::empty_set(d);
      int x = a;
      for (int m = 1; m <= run; ++m) {
        A.set(x);
        x = g.add(x, b);
        if (m > best && is_kl_sumfree(g, A, p)) best = m;
      }
    }
  }
  return best;
}

/// mu(Z_n,{k,l}) via the interval reduction: max over d|n of gamma(Z_d) * n/d.
inline long long mu_via_gamma(long long n, const SumfreeParams& p) {
  check_params(p);
  long long best = 0;
  for (long long d : divisors(n)) best = std::max(best, gamma_interval(d, p) * (n / d));
  return best;
}

/// The coset construction behind the sumfree lower bound ("middle one-third"
/// for (2,1)): pull the best sumfree interval of Z_d back through the
/// projection onto the last coordinate mod d, which needs d | e(G). The
/// result has gamma(Z_d,{k,l}) * n/d elements and is (k,l)-sumfree.
inline SubsetMask middle_third_construction(const Group& g, int d, const SumfreeParams& p = {2, 1}) {
  const int n = g.order();
  if (d < 1 || g.exponent() % d != 0) throw std::invalid_argument("d must divide the exponent");
  long long start = 0;
  const long long len = gamma_interval(d, p, &start);
  SubsetMask A = SubsetMask::empty_set(n);
  if (g.spec().is_trivial() || len == 0) return A;
  const int last_axis = g.spec().rank() - 1;
  for (int x = 0; x < n; ++x) {
    const int c = g.coords(x)[static_cast<std::size_t>(last_axis)];  // coordinate on the order-e(G) axis
    const long long q = c % d;
    if (((q - start) % d + d) % d < len) A.set(x);
  }
  return A;
}

/// Smallest m such that every m-subset is h-complete, found as one plus the
/// largest h-incomplete size. kind selects plain or restricted folding.
inline int chi_brute(const Group& g, int h, SumsetKind kind = SumsetKind::Plain,
                     int cap = kDefaultChiCap) {
  if (kind != SumsetKind::Plain && kind != SumsetKind::Restricted)
    throw std::invalid_argument("critical numbers are defined for plain and restricted folding");
  if (h < 1) throw std::invalid_argument("need h >= 1");
  const int n = g.order();
  if (n > cap) throw cap_exceeded("chi scan cap exceeded: order " + std::to_string(n));

  const std::uint64_t full = universe_word(n);
  const int layers = h + 1;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(n + 1) * layers, 0);
  stack[0] = 1;
  int best = 0;  // empty set is h-incomplete
  auto rec = [&](auto&& self, int start, int depth) -> void {
    best = std::max(best, depth);
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(depth) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(depth + 1) * layers;
    for (int i = start; i < n; ++i) {
      if (depth + (n - i) <= best) break;
      SumsetDP::advance(g, kind, src, dst, h, i);
      if (dst[h] == full) continue;  // complete sets only grow
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best + 1;
}

/// Sumset sizes over all maximum-size h-incomplete subsets, with the number
/// of witnesses per size.
struct SpectrumResult {
  int chi = 0;
  std::vector<long long> sizes;               // sorted distinct |hA|
  std::map<long long, long long> census;      // size -> number of witness sets
};

inline SpectrumResult spectrum_brute(const Group& g, int h, SumsetKind kind = SumsetKind::Plain,
                                     int cap = kDefaultChiCap) {
  const int n = g.order();
  SpectrumResult out;
  out.chi = chi_brute(g, h, kind, cap);
  const int m = out.chi - 1;
  const std::uint64_t full = universe_word(n);
  const int layers = h + 1;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(m + 1) * layers, 0);
  stack[0] = 1;
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      out.census[std::popcount(stack[static_cast<std::size_t>(depth) * layers + h])] += 1;
      return;
    }
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(depth) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(depth + 1) * layers;
    for (int i = start; i <= n - (m - depth); ++i) {
      SumsetDP::advance(g, kind, src, dst, h, i);
      if (dst[h] == full) continue;
      self(self, i + 1, depth + 1);
    }
  };
  if (m >= 0) rec(rec, 0, 0);
  for (const auto& [size, count] : out.census) out.sizes.push_back(size);
  return out;
}

}  // namespace sumsets

#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"
#include "sumsets/parallel.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

inline constexpr int kDefaultScanCap = 32;    // m-subset value scans
inline constexpr int kDefaultCensusCap = 24;  // full optimizer censuses

enum class Symmetry { Symmetric, Asymmetric, NearSymmetric, None };

inline const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Asymmetric: return "asymmetric";
    case Symmetry::NearSymmetric: return "near-symmetric";
    case Symmetry::None: return "none";
  }
  return "?";
}

/// Structural description of a subset: arithmetic-progression shape, the
/// minimal subgroup whose coset contains it, symmetry class, and the
/// {a, a+g1, a+g2, a+g1+g2} quad shape that shows up in inverse conjectures.
struct StructureFlags {
  bool is_ap = false;
  int ap_difference = 0;
  std::optional<Subgroup> coset_subgroup;  // set when A fits in a proper coset
  Symmetry symmetry = Symmetry::None;
  bool is_quad = false;
};

/// True iff A = {a + i*b : 0 <= i < |A|}; fills start/difference when found.
inline bool is_arithmetic_progression(const Group& g, const SubsetMask& A, int* start_out = nullptr,
                                      int* diff_out = nullptr) {
  const int m = A.count();
  const int n = g.order();
  if (m == 0) return false;
  auto emit = [&](int a, int b) {
    if (start_out) *start_out = a;
    if (diff_out) *diff_out = b;
    return true;
  };
  const auto elems = A.elements();
  if (m == 1) return emit(elems[0], 0);
  for (int b = 1; b < n; ++b) {
    const std::uint64_t shifted = g.shift_word(A.word(), b);
    if (shifted == A.word()) {
      // A is a union of cosets of <b>; it is a b-progression iff one full coset
      if (g.element_order(b) != m) continue;
      std::uint64_t coset = 0;
      int x = elems[0];
      for (int i = 0; i < m; ++i, x = g.add(x, b)) coset |= std::uint64_t{1} << x;
      if (coset == A.word()) return emit(elems[0], b);
      continue;
    }
    // unique start: the element whose predecessor is outside A
    std::uint64_t starts = A.word() & ~shifted;
    if (std::popcount(starts) != 1) continue;
    int a = std::countr_zero(starts);
    int x = a;
    bool ok = true;
    for (int i = 1; i < m; ++i) {
      x = g.add(x, b);
      if (!A.test(x)) {
        ok = false;
        break;
      }
    }
    if (ok) return emit(a, b);
  }
  return false;
}

inline Symmetry symmetry_class(const Group& g, const SubsetMask& A) {
  const SubsetMask negA = g.neg_mask(A);
  if (negA == A) return Symmetry::Symmetric;
  if (!negA.intersects(A)) return Symmetry::Asymmetric;
  for (int x : A.elements()) {
    SubsetMask b = A;
    b.reset(x);
    if (g.neg_mask(b) == b) return Symmetry::NearSymmetric;
  }
  return Symmetry::None;
}

inline StructureFlags classify_set(const Group& g, const SubsetMask& A) {
  if (A.none()) throw std::invalid_argument("classify_set requires a nonempty set");
  StructureFlags f;
  int start = 0, diff = 0;
  f.is_ap = is_arithmetic_progression(g, A, &start, &diff);
  if (f.is_ap) f.ap_difference = diff;
  const int a0 = A.elements().front();
  const SubsetMask h = g.closure(g.shift(A, g.neg(a0)));
  if (h.count() < g.order()) f.coset_subgroup = Subgroup{h, h.count()};
  f.symmetry = symmetry_class(g, A);
  if (A.count() == 4) {
    const auto e = g.shift(A, g.neg(a0)).elements();  // {0, u, v, w}
    const int u = e[1], v = e[2], w = e[3];
    f.is_quad = (g.add(u, v) == w) || (g.add(u, w) == v) || (g.add(v, w) == u);
  }
  return f;
}

/// Minimum h-fold sumset sizes over all m-subsets, for every m <= max_m and
/// h <= max_h at once, with the lexicographically smallest witness per cell.
class RhoTable {
 public:
  RhoTable(int n, int max_m, int max_h) : n_(n), max_m_(max_m), max_h_(max_h) {
    cells_.assign(static_cast<std::size_t>(max_m + 1) * (max_h + 1), Cell{});
  }

  struct Cell {
    int value = INT_MAX;
    std::uint64_t witness = 0;
  };

  int value(int m, int h) const { return at(m, h).value; }
  SubsetMask witness(int m, int h) const { return {n_, at(m, h).witness}; }
  int max_m() const { return max_m_; }
  int max_h() const { return max_h_; }

  const Cell& at(int m, int h) const { return cells_[index(m, h)]; }
  Cell& at(int m, int h) { return cells_[index(m, h)]; }

 private:
  std::size_t index(int m, int h) const {
    if (m < 0 || m > max_m_ || h < 0 || h > max_h_) throw std::out_of_range("rho table cell");
    return static_cast<std::size_t>(m) * (max_h_ + 1) + h;
  }

  int n_, max_m_, max_h_;
  std::vector<Cell> cells_;
};

namespace detail {

struct ScanFrame {
  std::vector<std::uint64_t> layers;  // (max_h + 1) words per depth level
};

// One depth-first pass over ascending-index subsets, recording every node.
// `base_mask`/`base_dp` seed the walk; extensions use elements > `first_free`.
inline void rho_dfs(const Group& g, SumsetKind kind, int max_h, int max_m, std::uint64_t base_mask,
                    const std::vector<std::uint64_t>& base_dp, int first_free, RhoTable& table) {
  const int n = g.order();
  const int layers = max_h + 1;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(max_m + 1) * layers);
  std::vector<int> chosen(static_cast<std::size_t>(max_m + 1));
  int depth = std::popcount(base_mask);
  std::copy(base_dp.begin(), base_dp.end(), stack.begin() + static_cast<std::size_t>(depth) * layers);

  auto record = [&](int m, const std::uint64_t* dp, std::uint64_t mask) {
    for (int h = 0; h <= max_h; ++h) {
      auto& cell = table.at(m, h);
      const int v = std::popcount(dp[h]);
      if (v < cell.value) {
        cell.value = v;
        cell.witness = mask;
      }
    }
  };

  record(depth, stack.data() + static_cast<std::size_t>(depth) * layers, base_mask);

  std::uint64_t mask = base_mask;
  auto rec = [&](auto&& self, int start, int d) -> void {
    if (d == max_m) return;
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(d) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(d + 1) * layers;
    for (int i = start; i < n; ++i) {
      SumsetDP::advance(g, kind, src, dst, max_h, i);
      mask |= std::uint64_t{1} << i;
      record(d + 1, dst, mask);
      self(self, i + 1, d + 1);
      mask &= ~(std::uint64_t{1} << i);
    }
  };
  rec(rec, first_free, depth);
}

// Shard prefixes in lexicographic DFS order; prefixes shorter than the shard
// depth are record-only, prefixes at full depth own the whole subtree.
struct ScanShard {
  std::vector<int> prefix;
  bool subtree = false;
};

inline std::vector<ScanShard> make_shards(int n, int first_free, int max_m, int base_size, int depth) {
  std::vector<ScanShard> out;
  std::vector<int> cur;
  const int usable = std::max(0, std::min(depth, max_m - base_size));
  auto rec = [&](auto&& self, int start, int len) -> void {
    if (len == usable) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      out.push_back({cur, len + 1 == usable});
      self(self, i + 1, len + 1);
      cur.pop_back();
    }
  };
  out.push_back({{}, usable == 0});  // the base node itself
  if (usable > 0) rec(rec, first_free, 0);
  return out;
}

}  // namespace detail

/// Exhaustive minimum scan. For Plain/Restricted the search fixes 0 in A
/// (translation leaves cardinalities alone there); signed kinds are scanned in
/// full. Deterministic for any job count: shards merge in prefix order.
inline RhoTable rho_scan(const Group& g, int max_m, int max_h, SumsetKind kind, int jobs = 1,
                         int cap = kDefaultScanCap) {
  const int n = g.order();
  if (n > cap) throw cap_exceeded("rho scan cap exceeded: order " + std::to_string(n));
  if (max_m < 0 || max_m > n) throw std::invalid_argument("need 0 <= max_m <= n");
  if (max_h < 0) throw std::invalid_argument("need max_h >= 0");

  const bool fix_zero = !is_signed_kind(kind) && max_m >= 1;
  const int layers = max_h + 1;
  std::vector<std::uint64_t> base_dp(static_cast<std::size_t>(layers), 0);
  base_dp[0] = 1;
  std::uint64_t base_mask = 0;
  int first_free = 0;
  if (fix_zero) {
    SumsetDP::advance(g, kind, base_dp.data(), base_dp.data(), max_h, 0);
    base_mask = 1;
    first_free = 1;
  }
  const int base_size = fix_zero ? 1 : 0;

  const int free_count = n - first_free;
  int shard_depth = 0;
  if (jobs > 1) shard_depth = free_count >= 18 ? 3 : (free_count >= 10 ? 2 : 1);
  auto shards = detail::make_shards(n, first_free, max_m, base_size, shard_depth);

  std::vector<RhoTable> results(shards.size(), RhoTable(n, max_m, max_h));
  parallel_tasks(shards.size(), jobs, [&](std::size_t si) {
    const auto& shard = shards[si];
    std::vector<std::uint64_t> dp = base_dp;
    std::uint64_t mask = base_mask;
    for (int e : shard.prefix) {
      SumsetDP::advance(g, kind, dp.data(), dp.data(), max_h, e);
      mask |= std::uint64_t{1} << e;
    }
    if (!shard.subtree) {
      for (int h = 0; h <= max_h; ++h) {
        auto& cell = results[si].at(base_size + static_cast<int>(shard.prefix.size()), h);
        cell.value = std::popcount(dp[h]);
        cell.witness = mask;
      }
      return;
    }
    const int next_free = shard.prefix.empty() ? first_free : shard.prefix.back() + 1;
    detail::rho_dfs(g, kind, max_h, max_m, mask, dp, next_free, results[si]);
  });

  RhoTable merged(n, max_m, max_h);
  for (const auto& r : results)
    for (int m = 0; m <= max_m; ++m)
      for (int h = 0; h <= max_h; ++h) {
        const auto& c = r.at(m, h);
        auto& out = merged.at(m, h);
        if (c.value < out.value) out = c;
      }
  return merged;
}

/// An optimal value with canonical witness sets and their structure flags.
struct ExtremalResult {
  int value = 0;
  std::vector<SubsetMask> witnesses;
  std::vector<StructureFlags> witness_classes;
  bool exhaustive = false;
};

/// rho(G, m, h) for the chosen kind, with the lexicographically smallest
/// minimizing set as witness.
inline ExtremalResult rho_brute(const Group& g, int m, int h, SumsetKind kind, int jobs = 1,
                                int cap = kDefaultScanCap) {
  if (m < 1 || m > g.order()) throw std::invalid_argument("need 1 <= m <= n");
  if (h < 0) throw std::invalid_argument("need h >= 0");
  RhoTable t = rho_scan(g, m, h, kind, jobs, cap);
  ExtremalResult r;
  r.value = t.value(m, h);
  r.witnesses.push_back(t.witness(m, h));
  r.witness_classes.push_back(classify_set(g, r.witnesses.front()));
  r.exhaustive = false;
  return r;
}

/// Lexicographically smallest mask among all translates of A.
inline SubsetMask canonical_translate(const Group& g, const SubsetMask& A) {
  SubsetMask best = A;
  for (int a : A.elements()) {
    SubsetMask t = g.shift(A, g.neg(a));
    if (SubsetMask::lex_less(t, best)) best = t;
  }
  return best;
}

/// Every m-subset attaining rho(G, m, h): one canonical representative per
/// translation class for Plain/Restricted, the full census for signed kinds.
inline ExtremalResult enumerate_optimizers(const Group& g, int m, int h, SumsetKind kind,
                                           int cap = kDefaultCensusCap) {
  const int n = g.order();
  if (n > cap) throw cap_exceeded("optimizer census cap exceeded: order " + std::to_string(n));
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= n");
  const int opt = rho_scan(g, m, h, kind, 1, cap).value(m, h);

  const bool fix_zero = !is_signed_kind(kind);
  const int layers = h + 1;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(m + 1) * layers, 0);
  stack[0] = 1;
  std::uint64_t mask = 0;
  int first_free = 0;
  int depth = 0;
  if (fix_zero) {
    SumsetDP::advance(g, kind, stack.data(), stack.data() + layers, h, 0);
    mask = 1;
    first_free = 1;
    depth = 1;
  }

  std::set<std::uint64_t> canon;
  auto rec = [&](auto&& self, int start, int d) -> void {
    if (d == m) {
      if (std::popcount(stack[static_cast<std::size_t>(d) * layers + h]) == opt) {
        SubsetMask w(n, mask);
        canon.insert(fix_zero ? canonical_translate(g, w).word() : w.word());
      }
      return;
    }
    const std::uint64_t* src = stack.data() + static_cast<std::size_t>(d) * layers;
    std::uint64_t* dst = stack.data() + static_cast<std::size_t>(d + 1) * layers;
    for (int i = start; i <= n - (m - d); ++i) {
      SumsetDP::advance(g, kind, src, dst, h, i);
      if (std::popcount(dst[h]) > opt) continue;  // sumsets only grow
      mask |= std::uint64_t{1} << i;
      self(self, i + 1, d + 1);
      mask &= ~(std::uint64_t{1} << i);
    }
  };
  if (depth <= m) rec(rec, first_free, depth);

  ExtremalResult r;
  r.value = opt;
  r.exhaustive = true;
  for (std::uint64_t w : canon) r.witnesses.emplace_back(n, w);
  std::sort(r.witnesses.begin(), r.witnesses.end(), SubsetMask::lex_less);
  r.witness_classes.reserve(r.witnesses.size());
  for (const auto& w : r.witnesses) r.witness_classes.push_back(classify_set(g, w));
  return r;
}

}  // namespace sumsets

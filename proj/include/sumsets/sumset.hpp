#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"

namespace sumsets {

/// The four folding disciplines: coefficients lambda_i with sum of |lambda_i|
/// equal to the budget h, where Plain allows lambda_i >= 0, Restricted
/// lambda_i in {0,1}, Signed lambda_i in Z, RestrictedSigned lambda_i in
/// {0,+1,-1}.
enum class SumsetKind { Plain, Restricted, Signed, RestrictedSigned };

inline const char* kind_name(SumsetKind k) {
  switch (k) {
    case SumsetKind::Plain: return "plain";
    case SumsetKind::Restricted: return "restricted";
    case SumsetKind::Signed: return "signed";
    case SumsetKind::RestrictedSigned: return "restricted-signed";
  }
  return "?";
}

inline SumsetKind parse_kind(const std::string& s) {
  if (s == "plain" || s == "unrestricted") return SumsetKind::Plain;
  if (s == "restricted") return SumsetKind::Restricted;
  if (s == "signed") return SumsetKind::Signed;
  if (s == "restricted-signed" || s == "restricted_signed") return SumsetKind::RestrictedSigned;
  throw std::invalid_argument("unknown sumset kind: " + s);
}

inline bool is_signed_kind(SumsetKind k) {
  return k == SumsetKind::Signed || k == SumsetKind::RestrictedSigned;
}
inline bool is_restricted_kind(SumsetKind k) {
  return k == SumsetKind::Restricted || k == SumsetKind::RestrictedSigned;
}

/// Layered sumset state: layer(b) is the set of values reachable with
/// coefficient budget exactly b over the elements added so far. Adding one
/// element costs O(max_budget^2) word shifts, which is what makes whole
/// subset-lattice scans affordable.
class SumsetDP {
 public:
  SumsetDP(const Group& g, int max_budget, SumsetKind kind)
      : g_(&g), kind_(kind), layers_(static_cast<std::size_t>(max_budget) + 1, 0) {
    if (max_budget < 0) throw std::invalid_argument("sumset budget must be nonnegative");
    layers_[0] = 1;  // empty sum
  }

  int max_budget() const { return static_cast<int>(layers_.size()) - 1; }

  void add_element(int a) { advance(*g_, kind_, layers_.data(), layers_.data(), max_budget(), a); }

  SubsetMask layer(int b) const { return {g_->order(), layers_[static_cast<std::size_t>(b)]}; }
  std::uint64_t layer_word(int b) const { return layers_[static_cast<std::size_t>(b)]; }

  SubsetMask union_up_to(int b) const {
    std::uint64_t w = 0;
    for (int i = 0; i <= b; ++i) w |= layers_[static_cast<std::size_t>(i)];
    return {g_->order(), w};
  }

  /// In-place layer transition for adding one new element to the set.
  /// dst and src may alias; layers are consumed from the top down.
  static void advance(const Group& g, SumsetKind kind, const std::uint64_t* src, std::uint64_t* dst, int max_budget,
                      int a) {
    const int neg_a = g.neg(a);
    switch (kind) {
      case SumsetKind::Plain:
        for (int b = max_budget; b >= 1; --b) {
          std::uint64_t w = src[b];
          int ja = 0;
          for (int j = 1; j <= b; ++j) {
            ja = g.add(ja, a);
            w |= g.shift_word(src[b - j], ja);
          }
          dst[b] = w;
        }
        break;
      case SumsetKind::Restricted:
        for (int b = max_budget; b >= 1; --b) dst[b] = src[b] | g.shift_word(src[b - 1], a);
        break;
      case SumsetKind::Signed:
        for (int b = max_budget; b >= 1; --b) {
          std::uint64_t w = src[b];
          int ja = 0, nja = 0;
          for (int j = 1; j <= b; ++j) {
            ja = g.add(ja, a);
            nja = g.add(nja, neg_a);
            w |= g.shift_word(src[b - j], ja);
            w |= g.shift_word(src[b - j], nja);
          }
          dst[b] = w;
        }
        break;
      case SumsetKind::RestrictedSigned:
        for (int b = max_budget; b >= 1; --b)
          dst[b] = src[b] | g.shift_word(src[b - 1], a) | g.shift_word(src[b - 1], neg_a);
        break;
    }
    dst[0] = src[0];
  }

 private:
  const Group* g_;
  SumsetKind kind_;
  std::vector<std::uint64_t> layers_;
};

/// All h-fold sumsets of A for h = 0..max_h in one pass; layer 0 is {0}.
inline std::vector<SubsetMask> sumset_layers(const Group& g, const SubsetMask& A, int max_h, SumsetKind kind) {
  SumsetDP dp(g, max_h, kind);
  for (int a : A.elements()) dp.add_element(a);
  std::vector<SubsetMask> out;
  out.reserve(static_cast<std::size_t>(max_h) + 1);
  for (int h = 0; h <= max_h; ++h) out.push_back(dp.layer(h));
  return out;
}

/// The h-fold sumset of A under the chosen discipline. h = 0 gives {0};
/// restricted kinds give the empty set when h exceeds |A|.
inline SubsetMask sumset(const Group& g, const SubsetMask& A, int h, SumsetKind kind) {
  if (h < 0) throw std::invalid_argument("fold count h must be nonnegative");
  SumsetDP dp(g, h, kind);
  for (int a : A.elements()) dp.add_element(a);
  return dp.layer(h);
}

/// { a - b : a in A, b in B }.
inline SubsetMask diff_set(const Group& g, const SubsetMask& A, const SubsetMask& B) {
  std::uint64_t out = 0;
  for (int b : B.elements()) out |= g.shift_word(A.word(), g.neg(b));
  return {g.order(), out};
}

/// counts[x] = number of admissible coefficient vectors over the elements of A
/// with total budget at most s summing to x; the empty vector contributes 1 at 0.
inline std::vector<long long> rep_counts(const Group& g, const SubsetMask& A, int s, SumsetKind kind) {
  if (s < 0) throw std::invalid_argument("budget s must be nonnegative");
  const int n = g.order();
  const std::size_t stride = static_cast<std::size_t>(n);
  std::vector<long long> cnt(static_cast<std::size_t>(s + 1) * stride, 0);
  std::vector<long long> next(cnt.size());
  cnt[0] = 1;
  for (int a : A.elements()) {
    std::fill(next.begin(), next.end(), 0);
    const int neg_a = g.neg(a);
    for (int b = 0; b <= s; ++b) {
      for (int x = 0; x < n; ++x) {
        long long c = cnt[static_cast<std::size_t>(b) * stride + x];
        if (c == 0) continue;
        next[static_cast<std::size_t>(b) * stride + x] += c;  // lambda = 0
        switch (kind) {
          case SumsetKind::Plain: {
            int y = x;
            for (int j = 1; b + j <= s; ++j) {
              y = g.add(y, a);
              next[static_cast<std::size_t>(b + j) * stride + y] += c;
            }
            break;
          }
          case SumsetKind::Restricted:
            if (b + 1 <= s) next[static_cast<std::size_t>(b + 1) * stride + g.add(x, a)] += c;
            break;
          case SumsetKind::Signed: {
            int y = x, z = x;
            for (int j = 1; b + j <= s; ++j) {
              y = g.add(y, a);
              z = g.add(z, neg_a);
              next[static_cast<std::size_t>(b + j) * stride + y] += c;
              next[static_cast<std::size_t>(b + j) * stride + z] += c;
            }
            break;
          }
          case SumsetKind::RestrictedSigned:
            if (b + 1 <= s) {
              next[static_cast<std::size_t>(b + 1) * stride + g.add(x, a)] += c;
              next[static_cast<std::size_t>(b + 1) * stride + g.add(x, neg_a)] += c;
            }
            break;
        }
      }
    }
    cnt.swap(next);
  }
  std::vector<long long> totals(stride, 0);
  for (int b = 0; b <= s; ++b)
    for (int x = 0; x < n; ++x) totals[static_cast<std::size_t>(x)] += cnt[static_cast<std::size_t>(b) * stride + x];
  return totals;
}

}  // namespace sumsets

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumsets/mask.hpp"

namespace sumsets {

/// Thrown when a search or table build is asked to exceed its structural cap.
class cap_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite abelian group in invariant-factor form: factors n1 | n2 | ... | nr,
/// each >= 2. The trivial group is the empty chain.
struct GroupSpec {
  std::vector<int> invariant_factors;

  long long order() const {
    long long n = 1;
    for (int f : invariant_factors) n *= f;
    return n;
  }
  int exponent() const { return invariant_factors.empty() ? 1 : invariant_factors.back(); }
  int rank() const { return static_cast<int>(invariant_factors.size()); }
  bool is_trivial() const { return invariant_factors.empty(); }
  bool is_cyclic() const { return invariant_factors.size() <= 1; }

  /// True when G = Z_p^r for a prime p; sets *p_out when given.
  bool is_elementary_abelian(int* p_out = nullptr) const {
    if (invariant_factors.empty()) return false;
    int p = invariant_factors.front();
    for (int q = 2; static_cast<long long>(q) * q <= p; ++q)
      if (p % q == 0) return false;
    for (int f : invariant_factors)
      if (f != p) return false;
    if (p_out) *p_out = p;
    return true;
  }

  bool operator==(const GroupSpec& other) const = default;

  static GroupSpec cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
    GroupSpec g;
    if (n > 1) g.invariant_factors.push_back(n);
    return g;
  }

  /// Canonicalizes an arbitrary direct product of cyclic groups into the
  /// invariant-factor chain (CRT merge of the primary decomposition).
  static GroupSpec from_factors(const std::vector<int>& factors) {
    std::map<int, std::vector<int>> prime_exps;  // prime -> exponents, descending
    for (int f : factors) {
      if (f < 1) throw std::invalid_argument("cyclic factor must be >= 1");
      int rem = f;
      for (int p = 2; static_cast<long long>(p) * p <= rem; ++p) {
        if (rem % p != 0) continue;
        int e = 0;
        while (rem % p == 0) { rem /= p; ++e; }
        prime_exps[p].push_back(e);
      }
      if (rem > 1) prime_exps[rem].push_back(1);
    }
    std::size_t chain_len = 0;
    for (auto& [p, exps] : prime_exps) {
      std::sort(exps.rbegin(), exps.rend());
      chain_len = std::max(chain_len, exps.size());
    }
    GroupSpec g;
    g.invariant_factors.assign(chain_len, 1);
    // slot 0 holds the largest invariant factor while building; reverse at the end
    for (auto& [p, exps] : prime_exps) {
      for (std::size_t i = 0; i < exps.size(); ++i) {
        long long v = g.invariant_factors[i];
        for (int e = 0; e < exps[i]; ++e) v *= p;
        if (v > (1LL << 31)) throw std::invalid_argument("group order too large");
        g.invariant_factors[i] = static_cast<int>(v);
      }
    }
    std::reverse(g.invariant_factors.begin(), g.invariant_factors.end());
    return g;
  }

  /// Parses the grammar Z<n>(xZ<n>)*, case-insensitive separator, each n >= 2.
  static GroupSpec parse(const std::string& text) {
    std::vector<int> factors;
    std::size_t i = 0;
    while (i < text.size()) {
      char z = text[i];
      if (z != 'Z' && z != 'z') throw std::invalid_argument("group spec: expected 'Z' in '" + text + "'");
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("group spec: expected digits after 'Z' in '" + text + "'");
      long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > (1LL << 31)) throw std::invalid_argument("group spec: factor too large");
        ++i;
      }
      if (v < 2) throw std::invalid_argument("group spec: cyclic factor must be >= 2");
      factors.push_back(static_cast<int>(v));
      if (i < text.size()) {
        if (text[i] != 'x' && text[i] != 'X') throw std::invalid_argument("group spec: expected 'x' separator");
        ++i;
        if (i == text.size()) throw std::invalid_argument("group spec: trailing separator");
      }
    }
    if (factors.empty()) throw std::invalid_argument("group spec: empty");
    return from_factors(factors);
  }

  std::string to_string() const {
    if (invariant_factors.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) s += 'x';
      s += 'Z';
      s += std::to_string(invariant_factors[i]);
    }
    return s;
  }
};

/// |L| = |{x : 2x = 0}| = prod gcd(2, n_i).
inline long long involution_count(const GroupSpec& g) {
  long long c = 1;
  for (int f : g.invariant_factors) c *= std::gcd(2, f);
  return c;
}

/// All abelian groups of order 2..max_order as canonical chains, sorted by
/// (order, lexicographic chain). The trivial group is not included.
inline std::vector<GroupSpec> enumerate_groups(int max_order) {
  std::vector<GroupSpec> out;
  std::vector<int> chain;
  // min_factor = 1 marks the first position: later factors must be multiples
  // of their predecessor
  auto rec = [&](auto&& self, int remaining, int min_factor) -> void {
    if (remaining == 1) {
      GroupSpec g;
      g.invariant_factors = chain;
      out.push_back(std::move(g));
      return;
    }
    for (int f = std::max(2, min_factor); f <= remaining; ++f) {
      if (remaining % f != 0) continue;
      if (min_factor > 1 && f % min_factor != 0) continue;
      chain.push_back(f);
      self(self, remaining / f, f);
      chain.pop_back();
    }
  };
  for (int n = 2; n <= max_order; ++n) rec(rec, n, 1);
  return out;
}

struct Subgroup {
  SubsetMask elements;
  int order = 0;
};

/// Working tables for one group: element arithmetic, mask translation,
/// subgroup and automorphism enumeration. Order is capped at 64 so subsets
/// fit in a word. Immutable after construction; safe to share across threads.
class Group {
 public:
  explicit Group(GroupSpec spec) : spec_(std::move(spec)) {
    long long order = spec_.order();
    if (order > kMaxMaskBits)
      throw cap_exceeded("group order " + std::to_string(order) + " exceeds the mask cap of 64");
    n_ = static_cast<int>(order);
    build_tables();
  }
  explicit Group(const std::string& spec_text) : Group(GroupSpec::parse(spec_text)) {}

  const GroupSpec& spec() const { return spec_; }
  int order() const { return n_; }
  int exponent() const { return spec_.exponent(); }

  int add(int x, int y) const { return add_table_[static_cast<std::size_t>(check(x)) * n_ + check(y)]; }
  int neg(int x) const { return neg_table_[check(x)]; }
  int sub(int x, int y) const { return add(x, neg(y)); }

  int scalar_mul(long long c, int x) const {
    check(x);
    int out = 0;
    const int r = spec_.rank();
    for (int axis = 0; axis < r; ++axis) {
      int ni = spec_.invariant_factors[axis];
      long long coord = (c % ni) * coords_[static_cast<std::size_t>(x) * r + axis] % ni;
      if (coord < 0) coord += ni;
      out += static_cast<int>(coord) * strides_[axis];
    }
    return out;
  }

  int element_order(int x) const {
    long long o = 1;
    const int r = spec_.rank();
    for (int axis = 0; axis < r; ++axis) {
      int ni = spec_.invariant_factors[axis];
      int c = coords_[static_cast<std::size_t>(x) * r + axis];
      o = std::lcm(o, static_cast<long long>(ni) / std::gcd(ni, c == 0 ? ni : c));
    }
    return static_cast<int>(o);
  }

  std::vector<int> coords(int x) const {
    check(x);
    const int r = spec_.rank();
    std::vector<int> out(static_cast<std::size_t>(r));
    for (int axis = 0; axis < r; ++axis) out[axis] = coords_[static_cast<std::size_t>(x) * r + axis];
    return out;
  }

  int index_of(const std::vector<int>& cs) const {
    if (static_cast<int>(cs.size()) != spec_.rank()) throw std::invalid_argument("coordinate arity mismatch");
    int out = 0;
    for (std::size_t axis = 0; axis < cs.size(); ++axis) {
      int ni = spec_.invariant_factors[axis];
      int c = cs[axis] % ni;
      if (c < 0) c += ni;
      out += c * strides_[axis];
    }
    return out;
  }

  /// { x + a : x in m }, as packed words. The hot path of every search.
  std::uint64_t shift_word(std::uint64_t w, int a) const {
    const int r = spec_.rank();
    for (int axis = 0; axis < r; ++axis) {
      int c = coords_[static_cast<std::size_t>(a) * r + axis];
      if (c == 0) continue;
      const Rot& rot = rot_[rot_base_[axis] + c];
      w = ((w & rot.lo) << rot.t) | ((w & rot.hi) >> rot.u);
    }
    return w;
  }

  SubsetMask shift(const SubsetMask& m, int a) const { return {n_, shift_word(m.word(), check(a))}; }

  SubsetMask neg_mask(const SubsetMask& m) const {
    std::uint64_t out = 0;
    for (std::uint64_t w = m.word(); w != 0; w &= w - 1)
      out |= std::uint64_t{1} << neg_table_[std::countr_zero(w)];
    return {n_, out};
  }

  /// { c*x : x in m }.
  SubsetMask mul_mask(const SubsetMask& m, long long c) const {
    std::uint64_t out = 0;
    for (std::uint64_t w = m.word(); w != 0; w &= w - 1)
      out |= std::uint64_t{1} << scalar_mul(c, std::countr_zero(w));
    return {n_, out};
  }

  /// Applies an automorphism given as a permutation table.
  SubsetMask apply_perm(const SubsetMask& m, const std::vector<std::uint8_t>& perm) const {
    std::uint64_t out = 0;
    for (std::uint64_t w = m.word(); w != 0; w &= w - 1)
      out |= std::uint64_t{1} << perm[std::countr_zero(w)];
    return {n_, out};
  }

  /// Subgroup generated by the elements of m (plus 0).
  SubsetMask closure(const SubsetMask& m) const {
    std::uint64_t k = 1;  // {0}
    for (std::uint64_t w = m.word(); w != 0; w &= w - 1)
      k = extend_subgroup(k, std::countr_zero(w));
    return {n_, k};
  }

  bool is_subgroup_mask(const SubsetMask& m) const {
    if (!m.test(0)) return false;
    for (std::uint64_t w = m.word(); w != 0; w &= w - 1)
      if (shift_word(m.word(), std::countr_zero(w)) != m.word()) return false;
    return neg_mask(m) == m;
  }

  /// Every subgroup exactly once, sorted by (order, element tuple).
  /// Computed by closing subgroup-plus-one-element extensions to a fixpoint.
  std::vector<Subgroup> subgroups() const {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> queue;
    seen.insert(1);
    queue.push_back(1);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::uint64_t h = queue[qi];
      for (int g = 1; g < n_; ++g) {
        if ((h >> g) & 1u) continue;
        std::uint64_t k = extend_subgroup(h, g);
        if (seen.insert(k).second) queue.push_back(k);
      }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (std::uint64_t w : seen) out.push_back({SubsetMask(n_, w), std::popcount(w)});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.order != b.order) return a.order < b.order;
      return SubsetMask::lex_less(a.elements, b.elements);
    });
    return out;
  }

  long long involutions() const { return involution_count(spec_); }

  /// Multipliers c with gcd(c, n) = 1; these are exactly Aut(Z_n) for cyclic G.
  std::vector<int> cyclic_multipliers() const {
    if (!spec_.is_cyclic()) throw std::invalid_argument("multiplier automorphisms require a cyclic group");
    std::vector<int> out;
    for (int c = 1; c < std::max(n_, 2); ++c)
      if (std::gcd(c, n_) == 1) out.push_back(c);
    return out;
  }

  /// Full automorphism group as permutation tables, found by mapping the
  /// canonical generators to all elements of matching order constraint and
  /// keeping the bijections. Guarded by a candidate cap.
  std::vector<std::vector<std::uint8_t>> automorphisms(long long candidate_cap = 4'000'000) const {
    const int r = spec_.rank();
    std::vector<std::vector<int>> images(static_cast<std::size_t>(r));
    long long candidates = 1;
    for (int axis = 0; axis < r; ++axis) {
      int ni = spec_.invariant_factors[axis];
      for (int x = 0; x < n_; ++x)
        if (scalar_mul(ni, x) == 0) images[axis].push_back(x);
      candidates *= static_cast<long long>(images[axis].size());
      if (candidates > candidate_cap)
        throw cap_exceeded("automorphism candidate count exceeds cap for " + spec_.to_string());
    }
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<int> pick(static_cast<std::size_t>(r));
    std::vector<std::uint8_t> perm(static_cast<std::size_t>(n_));
    auto rec = [&](auto&& self, int axis) -> void {
      if (axis == r) {
        // phi(sum x_i e_i) = sum x_i pick_i, built by mixed-radix recurrence
        perm.assign(static_cast<std::size_t>(n_), 0);
        for (int x = 1; x < n_; ++x) {
          int last = last_axis_[x];
          perm[x] = static_cast<std::uint8_t>(add(perm[x - strides_[last]], pick[last]));
        }
        std::uint64_t hit = 0;
        for (int x = 0; x < n_; ++x) hit |= std::uint64_t{1} << perm[x];
        if (hit == universe_word(n_)) out.push_back(perm);
        return;
      }
      for (int v : images[axis]) {
        pick[axis] = v;
        self(self, axis + 1);
      }
    };
    if (n_ == 1) return {std::vector<std::uint8_t>{0}};
    rec(rec, 0);
    return out;
  }

 private:
  struct Rot {
    std::uint64_t lo = 0, hi = 0;
    std::uint8_t t = 0, u = 0;
  };

  int check(int x) const {
    if (x < 0 || x >= n_) throw std::out_of_range("element index out of range for " + spec_.to_string());
    return x;
  }

  // Union of H + j*g over j; exact closure of subgroup mask h extended by g.
  std::uint64_t extend_subgroup(std::uint64_t h, int g) const {
    std::uint64_t k = h;
    int step = g;
    while (((k >> step) & 1u) == 0) {
      k |= shift_word(h, step);
      step = add(step, g);
    }
    return k;
  }

  void build_tables() {
    const int r = spec_.rank();
    strides_.assign(static_cast<std::size_t>(std::max(r, 1)), 1);
    for (int axis = r - 2; axis >= 0; --axis)
      strides_[axis] = strides_[axis + 1] * spec_.invariant_factors[axis + 1];

    coords_.assign(static_cast<std::size_t>(n_) * std::max(r, 1), 0);
    last_axis_.assign(static_cast<std::size_t>(n_), 0);
    for (int x = 0; x < n_; ++x) {
      int rem = x;
      for (int axis = 0; axis < r; ++axis) {
        coords_[static_cast<std::size_t>(x) * r + axis] = static_cast<std::uint8_t>(rem / strides_[axis]);
        rem %= strides_[axis];
      }
      // lowest axis with a nonzero coordinate; x - stride[last] has that
      // coordinate reduced by one, which drives the automorphism recurrence
      for (int axis = r - 1; axis >= 0; --axis) {
        if (coords_[static_cast<std::size_t>(x) * r + axis] != 0) {
          last_axis_[x] = static_cast<std::uint8_t>(axis);
          break;
        }
      }
    }

    const std::uint64_t full = universe_word(n_);
    rot_base_.assign(static_cast<std::size_t>(std::max(r, 1)), 0);
    int total = 0;
    for (int axis = 0; axis < r; ++axis) {
      rot_base_[axis] = total;
      total += spec_.invariant_factors[axis];
    }
    rot_.assign(static_cast<std::size_t>(std::max(total, 1)), Rot{});
    for (int axis = 0; axis < r; ++axis) {
      const int period = spec_.invariant_factors[axis] * strides_[axis];
      for (int c = 1; c < spec_.invariant_factors[axis]; ++c) {
        Rot rot;
        rot.t = static_cast<std::uint8_t>(c * strides_[axis]);
        rot.u = static_cast<std::uint8_t>(period - rot.t);
        std::uint64_t lo = 0;
        for (int p = 0; p < n_; ++p)
          if (p % period < rot.u) lo |= std::uint64_t{1} << p;
        rot.lo = lo;
        rot.hi = full & ~lo;
        rot_[static_cast<std::size_t>(rot_base_[axis]) + c] = rot;
      }
    }

    add_table_.assign(static_cast<std::size_t>(n_) * n_, 0);
    neg_table_.assign(static_cast<std::size_t>(n_), 0);
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        int s = 0;
        for (int axis = 0; axis < r; ++axis) {
          int ni = spec_.invariant_factors[axis];
          int c = coords_[static_cast<std::size_t>(x) * r + axis] + coords_[static_cast<std::size_t>(y) * r + axis];
          if (c >= ni) c -= ni;
          s += c * strides_[axis];
        }
        add_table_[static_cast<std::size_t>(x) * n_ + y] = static_cast<std::uint8_t>(s);
      }
    }
    for (int x = 0; x < n_; ++x) {
      int s = 0;
      for (int axis = 0; axis < r; ++axis) {
        int ni = spec_.invariant_factors[axis];
        int c = coords_[static_cast<std::size_t>(x) * r + axis];
        s += (c == 0 ? 0 : ni - c) * strides_[axis];
      }
      neg_table_[x] = static_cast<std::uint8_t>(s);
    }
  }

  GroupSpec spec_;
  int n_ = 1;
  std::vector<int> strides_;
  std::vector<std::uint8_t> coords_;
  std::vector<std::uint8_t> last_axis_;
  std::vector<int> rot_base_;
  std::vector<Rot> rot_;
  std::vector<std::uint8_t> add_table_;
  std::vector<std::uint8_t> neg_table_;
};

}  // namespace sumsets

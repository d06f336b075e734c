#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumsets {

/// Largest group order supported by mask-based set computations.
/// Formula-only routines have no such limit.
inline constexpr int kMaxMaskBits = 64;

inline std::uint64_t universe_word(int n) {
  if (n < 0 || n > kMaxMaskBits) throw std::invalid_argument("mask universe must have 0..64 elements");
  return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A subset of a group, elements indexed 0..n-1, packed into a single word.
class SubsetMask {
 public:
  SubsetMask() = default;
  SubsetMask(int n, std::uint64_t bits) : n_(n), bits_(bits & universe_word(n)) {}

  static SubsetMask empty_set(int n) { return {n, 0}; }
  static SubsetMask full_set(int n) { return {n, universe_word(n)}; }
  static SubsetMask singleton(int n, int x) { return of(n, {x}); }
  static SubsetMask of(int n, std::initializer_list<int> xs) {
    SubsetMask m(n, 0);
    for (int x : xs) m.set(x);
    return m;
  }
  static SubsetMask from_elements(int n, const std::vector<int>& xs) {
    SubsetMask m(n, 0);
    for (int x : xs) m.set(x);
    return m;
  }

  int universe_size() const { return n_; }
  std::uint64_t word() const { return bits_; }

  bool test(int i) const { return (bits_ >> check(i)) & 1u; }
  SubsetMask& set(int i) { bits_ |= std::uint64_t{1} << check(i); return *this; }
  SubsetMask& reset(int i) { bits_ &= ~(std::uint64_t{1} << check(i)); return *this; }

  int count() const { return std::popcount(bits_); }
  bool none() const { return bits_ == 0; }
  bool is_full() const { return bits_ == universe_word(n_); }

  bool contains(const SubsetMask& other) const { return (other.bits_ & ~bits_) == 0; }
  bool intersects(const SubsetMask& other) const { return (bits_ & other.bits_) != 0; }

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { a.bits_ |= b.bits_; return a; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { a.bits_ &= b.bits_; return a; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { a.bits_ &= ~b.bits_; return a; }
  SubsetMask complement() const { return {n_, ~bits_ & universe_word(n_)}; }

  bool operator==(const SubsetMask& other) const = default;

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t w = bits_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
    return out;
  }

  /// Order used for canonical witnesses: compare as sorted element tuples,
  /// so (0,1,5) < (0,2,3) < (1,2).
  static bool lex_less(const SubsetMask& a, const SubsetMask& b) {
    std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    return (a.bits_ >> std::countr_zero(diff)) & 1u;
  }

  /// Renders the set as a sorted element tuple, e.g. "(2,3,5,7)".
  std::string to_string() const {
    std::string s = "(";
    bool first = true;
    for (int x : elements()) {
      if (!first) s += ',';
      s += std::to_string(x);
      first = false;
    }
    s += ')';
    return s;
  }

 private:
  int check(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("element index out of range");
    return i;
  }

  int n_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace sumsets

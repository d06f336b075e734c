#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsets/group.hpp"
#include "sumsets/mask.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

/// Result of evaluating a closed-form theorem value. Theorems with side
/// conditions report applicable = false (and no value) outside their scope.
struct FormulaValue {
  std::optional<long long> value;
  std::optional<long long> achieving_divisor;
  bool applicable = true;
  std::string reason;

  static FormulaValue not_applicable(std::string why) {
    FormulaValue f;
    f.applicable = false;
    f.reason = std::move(why);
    return f;
  }
  static FormulaValue of(long long v) {
    FormulaValue f;
    f.value = v;
    return f;
  }
  static FormulaValue of(long long v, long long d) {
    FormulaValue f;
    f.value = v;
    f.achieving_divisor = d;
    return f;
  }
};

inline long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}
inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline std::vector<long long> divisors(long long n) {
  std::vector<long long> small, big;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) big.push_back(n / d);
  }
  small.insert(small.end(), big.rbegin(), big.rend());
  return small;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

/// Exact binomial coefficient; the running product stays integral.
inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r / i * (n - k + i) + r % i * (n - k + i) / i;
  return r;
}

/// Delannoy number a(m,s) by its closed sum.
inline long long delannoy(int m, int s) {
  long long total = 0, pow2 = 1;
  for (int i = 0; i <= std::min(m, s); ++i, pow2 *= 2) total += binomial(s, i) * binomial(m, i) * pow2;
  return total;
}

/// Delannoy number by the a(m,s) = a(m-1,s) + a(m-1,s-1) + a(m,s-1) recursion.
inline long long delannoy_recursive(int m, int s) {
  std::vector<std::vector<long long>> t(static_cast<std::size_t>(m) + 1,
                                        std::vector<long long>(static_cast<std::size_t>(s) + 1, 1));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= s; ++j) t[i][j] = t[i - 1][j] + t[i - 1][j - 1] + t[i][j - 1];
  return t[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)];
}

/// Number of admissible coefficient vectors on m elements with budget <= s;
/// the order a group must have to carry a perfect structure of that kind.
inline long long capacity(SumsetKind kind, int m, int s) {
  switch (kind) {
    case SumsetKind::Plain:
      return binomial(m + s, s);
    case SumsetKind::Restricted: {
      long long t = 0;
      for (int h = 0; h <= s; ++h) t += binomial(m, h);
      return t;
    }
    case SumsetKind::Signed:
      return delannoy(m, s);
    case SumsetKind::RestrictedSigned: {
      long long t = 0, pow2 = 1;
      for (int i = 0; i <= s; ++i, pow2 *= 2) t += binomial(m, i) * pow2;
      return t;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Minimum sumset size
// ---------------------------------------------------------------------------

/// rho(G,m,h) = min over d|n of f_d = (h*ceil(m/d) - h + 1) * d. Depends on G
/// only through its order. Reports the smallest divisor attaining the minimum.
inline FormulaValue rho_formula(long long n, long long m, int h) {
  if (n < 1 || m < 1 || m > n || h < 1) throw std::invalid_argument("rho_formula requires 1 <= m <= n, h >= 1");
  long long best = -1, best_d = -1;
  for (long long d : divisors(n)) {
    long long fd = (static_cast<long long>(h) * ceil_div(m, d) - h + 1) * d;
    if (best < 0 || fd < best) {
      best = fd;
      best_d = d;
    }
  }
  return FormulaValue::of(best, best_d);
}

/// The explicit m-set in Z_n built from ceil(m/d) consecutive cosets of the
/// order-d subgroup; its h-fold sumset has size min{n, f_d, f_1}.
inline SubsetMask coset_progression_set(const Group& g, int m, int h, int d) {
  (void)h;
  const int n = g.order();
  if (!g.spec().is_cyclic()) throw std::invalid_argument("coset progression construction requires a cyclic group");
  if (d < 1 || n % d != 0) throw std::invalid_argument("d must divide n");
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= n");
  const int gap = n / d;  // generator of the order-d subgroup
  const int c = (m - 1) / d;
  const int k = m - c * d;
  SubsetMask A = SubsetMask::empty_set(n);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < d; ++j) A.set((i + j * gap) % n);
  for (int j = 0; j < k; ++j) A.set((c + j * gap) % n);
  return A;
}

/// Restricted minimum: exact min{n, hm - h^2 + 1} for prime n; for composite n
/// and h = 2 the proven upper bound with its parity/divisibility case split
/// (conjectured exact). Degenerate below m = 3 in the composite case.
inline FormulaValue rho_hat_closed(long long n, long long m, int h) {
  if (m < h || h < 1) return FormulaValue::not_applicable("requires m >= h >= 1");
  if (is_prime(n)) return FormulaValue::of(std::min(n, static_cast<long long>(h) * m - static_cast<long long>(h) * h + 1));
  if (h != 2) return FormulaValue::not_applicable("composite n covered only for h = 2");
  if (m < 3) return FormulaValue::not_applicable("h = 2 bound needs m >= 3");
  long long rho = *rho_formula(n, m, 2).value;
  bool first_case = (n % 2 == 0 && m % 2 == 0) ||
                    (n % (2 * m - 2) == 0 && !is_power_of_two(m - 1));
  return FormulaValue::of(std::min(rho, first_case ? 2 * m - 4 : 2 * m - 3));
}

/// Lev's conjectured lower bound min{rho(G,m,2), 2m - 2 - |L|}; the second
/// term is clamped at 0 where it would go negative.
inline FormulaValue lev_lower_bound(const GroupSpec& g, long long m) {
  if (m < 2) return FormulaValue::not_applicable("requires m >= 2");
  long long rho = *rho_formula(g.order(), m, 2).value;
  long long lev = std::max(0LL, 2 * m - 2 - involution_count(g));
  return FormulaValue::of(std::min(rho, lev));
}

/// Eliahou-Kervaire proven bound min{rho, 2m - 3} for Z_p^r with p an odd prime.
inline FormulaValue eliahou_kervaire_bound(const GroupSpec& g, long long m) {
  int p = 0;
  if (!g.is_elementary_abelian(&p) || p == 2)
    return FormulaValue::not_applicable("requires an elementary abelian group of odd prime exponent");
  if (m < 2) return FormulaValue::not_applicable("requires m >= 2");
  long long rho = *rho_formula(g.order(), m, 2).value;
  return FormulaValue::of(std::min(rho, std::max(0LL, 2 * m - 3)));
}

/// Signed minimum in an odd p-group: when m <= (c+1) p^k the value equals
/// rho; outside that range the companion conjecture predicts strict excess
/// and we report not-applicable.
inline FormulaValue rho_pm_pgroup(long long p, int r, long long m, int h) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (r < 1 || m < 1 || h < 1) throw std::invalid_argument("r, m, h must be positive");
  long long n = 1;
  for (int i = 0; i < r; ++i) n *= p;
  if (m > n) throw std::invalid_argument("m must be at most p^r");
  const long long f1 = static_cast<long long>(h) * m - h + 1;
  const long long delta = ((p - 1) % h == 0) ? 0 : 1;
  if (1 + delta > f1) return FormulaValue::not_applicable("no admissible k: p^0 + delta exceeds f1");
  long long pk = 1;
  while (pk * p + delta <= f1) pk *= p;
  long long c = 0;
  while ((static_cast<long long>(h) * (c + 1) + 1) * pk + delta <= f1) ++c;
  if (m > (c + 1) * pk)
    return FormulaValue::not_applicable("m exceeds (c+1) p^k; strict inequality conjectured");
  FormulaValue rho = rho_formula(n, m, h);
  return FormulaValue::of(*rho.value, *rho.achieving_divisor);
}

// ---------------------------------------------------------------------------
// (k,l)-sumfree maxima
// ---------------------------------------------------------------------------

/// mu(Z_n, {k,l}) = max over d|n of ceil((d - (delta - r)) / (k+l)) * n/d with
/// delta = gcd(d, k-l) and r = l * ceil((d - delta)/(k+l)) mod delta.
inline FormulaValue mu_formula(long long n, int k, int l) {
  if (k <= l || l < 1) throw std::invalid_argument("need k > l >= 1");
  if (n < 1) throw std::invalid_argument("need n >= 1");
  long long best = -1, best_d = -1;
  for (long long d : divisors(n)) {
    long long delta = std::gcd(d, static_cast<long long>(k - l));
    long long r = (l * ceil_div(d - delta, k + l)) % delta;
    long long term = ceil_div(d - (delta - r), k + l) * (n / d);
    if (term > best) {
      best = term;
      best_d = d;
    }
  }
  return FormulaValue::of(best, best_d);
}

/// Green-Ruzsa: exact maximum sumfree size for any abelian group, maximizing
/// ceil((d-1)/3) * n/d over divisors d of the exponent.
inline FormulaValue mu_sumfree_group(const GroupSpec& g) {
  const long long n = g.order();
  long long best = -1, best_d = -1;
  for (long long d : divisors(g.exponent())) {
    long long term = ceil_div(d - 1, 3) * (n / d);
    if (term > best) {
      best = term;
      best_d = d;
    }
  }
  return FormulaValue::of(best, best_d);
}

// ---------------------------------------------------------------------------
// Critical numbers and spectra
// ---------------------------------------------------------------------------

/// chi(G,h) = max over d|n of (floor((d-2)/h) + 1) * n/d, plus 1. Depends on
/// the order only.
inline FormulaValue chi_formula(long long n, int h) {
  if (n < 1 || h < 1) throw std::invalid_argument("need n >= 1, h >= 1");
  long long best = -1, best_d = -1;
  for (long long d : divisors(n)) {
    long long term = (floor_div(d - 2, h) + 1) * (n / d);
    if (term > best) {
      best = term;
      best_d = d;
    }
  }
  return FormulaValue::of(best + 1, best_d);
}

struct SpectrumFormula {
  bool applicable = true;
  std::string reason;
  std::set<long long> sizes;

  static SpectrumFormula not_applicable(std::string why) {
    SpectrumFormula s;
    s.applicable = false;
    s.reason = std::move(why);
    return s;
  }
};

/// S(G,2): sumset sizes of maximum-size 2-incomplete sets, split on the
/// 2-adic structure of the exponent; no formula is known for odd n <= 9.
inline SpectrumFormula S2_formula(const GroupSpec& g) {
  const long long n = g.order();
  const long long e = g.exponent();
  SpectrumFormula out;
  if (e % 4 == 0) {
    for (long long d : divisors(n))
      if (d % 2 == 0) out.sizes.insert(n - n / d);
  } else if (e % 2 == 0) {
    for (long long d : divisors(n))
      if (d % 2 == 0 && d != 4) out.sizes.insert(n - n / d);
  } else if (n > 9) {
    out.sizes = {n - 2, n - 1};
  } else {
    return SpectrumFormula::not_applicable("no stated case for odd n <= 9");
  }
  return out;
}

inline int valuation(long long t, long long p) {
  int v = 0;
  while (t % p == 0) {
    t /= p;
    ++v;
  }
  return v;
}

/// S(G,3) by the four-way case analysis on prime divisors mod 3 and on
/// whether G is an elementary abelian 7-group.
inline SpectrumFormula S3_formula(const GroupSpec& g) {
  const long long n = g.order();
  if (n < 2) return SpectrumFormula::not_applicable("trivial group");
  long long smallest_2mod3 = 0;
  for (long long p = 2; p <= n; ++p) {
    if (!is_prime(p) || n % p != 0) continue;
    if (p % 3 == 2) {
      smallest_2mod3 = p;
      break;
    }
  }
  SpectrumFormula out;
  if (smallest_2mod3 != 0) {
    out.sizes = {n - n / smallest_2mod3};
    return out;
  }
  if (n % 3 == 0) {
    for (long long d : divisors(n))
      if (d % 3 == 0 && d != 3) out.sizes.insert(n - n / d);
    const int cap = valuation(g.exponent(), 3);
    for (long long d : divisors(n)) {
      int v = valuation(d, 3);
      if (v >= 1 && v <= cap) out.sizes.insert(n - 2 * (n / d));
    }
    return out;
  }
  int p = 0;
  if (g.is_elementary_abelian(&p) && p == 7) {
    out.sizes = {n - 3};
    return out;
  }
  out.sizes = {n - 3, n - 1};
  return out;
}

/// Restricted critical number for h = 2 (known for cyclic groups).
inline long long chi_hat2(long long n) { return n / 2 + 2; }

/// Restricted spectrum for h = 2 in Z_n: {n-1} when n is a power of two,
/// otherwise {n-2, n-1}.
inline std::set<long long> S_hat2_formula(long long n) {
  if (is_power_of_two(n)) return {n - 1};
  return {n - 2, n - 1};
}

// ---------------------------------------------------------------------------
// Perfect-structure arithmetic
// ---------------------------------------------------------------------------

struct RamanujanNagellSolution {
  int k = 0;        // 2^k - 7 is a perfect square
  long long root = 0;  // the square root
  int rank = 0;     // r = k - 3, the elementary 2-group rank it induces
  long long m = 0;  // basis size from 2^(r+3) - 7 = (2m+1)^2
};

/// All k <= bound with 2^k - 7 a perfect square, with the induced admissible
/// ranks r = k - 3 and basis sizes m. Ranks with m < 1 are degenerate.
inline std::vector<RamanujanNagellSolution> ramanujan_nagell(int bound) {
  if (bound < 15) throw std::invalid_argument("search bound must be at least 15");
  if (bound > 120) throw std::invalid_argument("search bound too large for exact 128-bit arithmetic");
  std::vector<RamanujanNagellSolution> out;
  for (int k = 3; k <= bound; ++k) {
    const unsigned __int128 v = (static_cast<unsigned __int128>(1) << k) - 7;
    unsigned __int128 lo = 0, hi = (static_cast<unsigned __int128>(1) << (k / 2 + 1));
    while (lo < hi) {  // integer sqrt by bisection
      unsigned __int128 mid = (lo + hi + 1) / 2;
      if (mid * mid <= v) lo = mid;
      else hi = mid - 1;
    }
    if (lo * lo != v) continue;
    RamanujanNagellSolution s;
    s.k = k;
    s.root = static_cast<long long>(lo);
    s.rank = k - 3;
    s.m = (s.root - 1) / 2;
    out.push_back(s);
  }
  return out;
}

/// |(-A) u (A-A) u (2A-A) u ... u ((s-1)A-A) u (s-1)A| for a perfect s-basis
/// of size m: C(m+s,s) + (m-1)(s-1)/s * C(m+s-2,s-1). Must be integral.
inline long long disjoint_union_size(int m, int s) {
  if (s < 1 || m < 1) throw std::invalid_argument("need m >= 1, s >= 1");
  long long num = static_cast<long long>(m - 1) * (s - 1) * binomial(m + s - 2, s - 1);
  if (num % s != 0) throw std::domain_error("disjoint union size is not integral for these m, s");
  return binomial(m + s, s) + num / s;
}

}  // namespace sumsets

#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// calls into the sieve or the multiplicative-function code it checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<std::pair<u64, unsigned>> trial_factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline u64 smallest_prime_factor(u64 n) {
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 divisor_count(u64 n) { return divisors(n).size(); }

inline u64 unit_count(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

inline u64 mult_order(u64 a, u64 n) {
  if (n == 1) return 1;
  u64 k = 1;
  u64 v = a % n;
  while (v != 1) {
    v = v * a % n;
    ++k;
  }
  return k;
}

// Exponent of (Z/nZ)^*: lcm of all element orders (equivalently the max).
inline u64 group_exponent(u64 n) {
  u64 best = 1;
  for (u64 a = 1; a <= n; ++a) {
    if (std::gcd(a, n) == 1) best = std::max(best, mult_order(a, n));
  }
  return best;
}

// Divisor count of the largest divisor of n whose primes all exceed z,
// counted as divisors d | n with d = 1 or smallest prime factor > z.
inline u64 rough_divisor_count(u64 n, double z) {
  u64 c = 0;
  for (u64 d : divisors(n)) {
    if (d == 1 || static_cast<double>(smallest_prime_factor(d)) > z) ++c;
  }
  return c;
}

inline std::vector<u64> primes_below_or_equal(u64 x) {
  std::vector<u64> out;
  for (u64 p = 2; p <= x; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

// phi and lambda from trial-division factorizations.
inline u64 phi_formula(u64 n) {
  u64 out = 1;
  for (auto [p, e] : trial_factor(n)) {
    for (unsigned i = 1; i < e; ++i) out *= p;
    out *= p - 1;
  }
  return out;
}

inline u64 lambda_formula(u64 n) {
  u64 out = 1;
  for (auto [p, e] : trial_factor(n)) {
    u64 part = 1;
    if (p == 2 && e >= 3) {
      part = u64{1} << (e - 2);
    } else {
      for (unsigned i = 1; i < e; ++i) part *= p;
      part *= p - 1;
    }
    out = std::lcm(out, part);
  }
  return out;
}

}  // namespace oracle

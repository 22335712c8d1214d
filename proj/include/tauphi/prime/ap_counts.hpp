#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/arith/spf_table.hpp"
#include "tauphi/numeric/compensated.hpp"
#include "tauphi/prime/coverage.hpp"

namespace tauphi {

inline u64 normalized_residue(std::int64_t a, u64 q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<u64>(((a % m) + m) % m);
}

/// pi(x; q, a): primes p <= x with p = a (mod q). Requires gcd(a, q) = 1.
inline u64 prime_count_ap(double x, u64 q, std::int64_t a, const SpfTable& t) {
  if (q == 0) throw ParameterError("modulus must be positive");
  const u64 r = normalized_residue(a, q);
  if (std::gcd(r, q) != 1) throw ParameterError("prime_count_ap needs gcd(a, q) = 1");
  const u64 bound = covered_bound(t, x);
  u64 count = 0;
  for (u64 p : t.primes_up_to_bound(bound)) count += (p % q == r);
  return count;
}

/// E(x; q, a) = pi(x; q, a) - pi(x) / phi(q).
inline double ap_error(double x, u64 q, std::int64_t a, const SpfTable& t) {
  const u64 in_class = prime_count_ap(x, q, a, t);
  const u64 total = t.primes_up_to_bound(covered_bound(t, x)).size();
  const double phi_q = static_cast<double>(euler_phi(factorize(q, t)));
  return static_cast<double>(in_class) - static_cast<double>(total) / phi_q;
}

/// Table of pi(x; d, 1) for 1 <= d <= bound, built by distributing every
/// prime p <= x over the divisors of p - 1.
inline std::vector<u64> shifted_divisor_counts(u64 bound, const SpfTable& t) {
  std::vector<u64> counts(bound + 1, 0);
  std::vector<u64> divs;
  for (u64 p : t.primes_up_to_bound(bound)) {
    divs.assign(1, 1);
    for (const auto& [q, e] : factorize(p - 1, t)) {
      const std::size_t base = divs.size();
      u64 pw = 1;
      for (unsigned k = 1; k <= e; ++k) {
        pw *= q;
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
      }
    }
    for (u64 d : divs) ++counts[d];
  }
  return counts;
}

struct EzSumOptions {
  u64 divisor_budget = u64{1} << 20;
};

/// Sum over r | P_z of mu(r) * sum_{n <= Q, r | n} (pi(x; [u,n], 1) - pi(x)/phi([u,n])).
///
/// u = 1 gives the plain sum; u > 1 requires p(u) > z. The squarefree r | P_z
/// with r <= Q are enumerated explicitly, up to divisor_budget of them.
inline double ez_sum(double x, double z, double Q, u64 u, const SpfTable& t,
                     const EzSumOptions& opt = {}) {
  const u64 bound = covered_bound(t, x);
  if (u == 0) throw ParameterError("u must be positive");
  if (Q > x) throw ParameterError("ez_sum needs Q <= x");
  const u64 q_bound = floor_bound(Q);
  const auto fu = factorize(u, t);
  if (u > 1 && !above(mobius_omega(fu).smallest_prime, z)) {
    throw ParameterError("ez_sum with u > 1 needs p(u) > z");
  }
  if (q_bound == 0) return 0.0;

  const auto counts = shifted_divisor_counts(bound, t);
  const double pi_x = static_cast<double>(t.primes_up_to_bound(bound).size());

  std::vector<u64> small;
  for (u64 p : t.primes()) {
    if (!at_most(p, z)) break;
    small.push_back(p);
  }
  // Squarefree r | P_z with r <= Q, paired with mu(r).
  std::vector<std::pair<u64, int>> rs{{1, 1}};
  for (u64 p : small) {
    const std::size_t base = rs.size();
    for (std::size_t i = 0; i < base; ++i) {
      const u128 next = static_cast<u128>(rs[i].first) * p;
      if (next > q_bound) continue;
      rs.emplace_back(static_cast<u64>(next), -rs[i].second);
      if (rs.size() > opt.divisor_budget) {
        throw ResourceError("more than " + std::to_string(opt.divisor_budget) +
                            " divisors of P_z below Q");
      }
    }
  }

  std::int64_t count_part = 0;
  CompensatedSum share_part;
  for (const auto& [r, mu] : rs) {
    for (u64 n = r; n <= q_bound; n += r) {
      // [u, n] and phi([u, n]) from the merged factorizations.
      const auto fn = factorize(n, t);
      u128 l = 1;
      u64 phi_l = 1;
      std::size_t i = 0, j = 0;
      while (i < fu.size() || j < fn.size()) {
        u64 p;
        unsigned e;
        if (j == fn.size() || (i < fu.size() && fu[i].prime < fn[j].prime)) {
          p = fu[i].prime;
          e = fu[i++].exponent;
        } else if (i == fu.size() || fn[j].prime < fu[i].prime) {
          p = fn[j].prime;
          e = fn[j++].exponent;
        } else {
          p = fu[i].prime;
          e = std::max(fu[i++].exponent, fn[j++].exponent);
        }
        for (unsigned k = 0; k < e && l <= bound; ++k) l *= p;
        phi_l = checked_mul(phi_l, checked_mul(checked_pow(p, e - 1), p - 1));
      }
      const u64 in_class = l <= bound ? counts[static_cast<u64>(l)] : 0;
      count_part += mu * static_cast<std::int64_t>(in_class);
      share_part.add(-mu * pi_x / static_cast<double>(phi_l));
    }
  }
  share_part.add(static_cast<double>(count_part));
  return share_part.value();
}

}  // namespace tauphi

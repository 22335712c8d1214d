#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tauphi/arith/factorization.hpp"
#include "tauphi/errors.hpp"
#include "tauphi/numeric/checked.hpp"
#include "tauphi/numeric/parallel.hpp"

namespace tauphi {

using u32 = std::uint32_t;

/// Primes p <= limit by a plain Eratosthenes sieve.
inline std::vector<u32> primes_up_to(u64 limit) {
  if (limit < 2) return {};
  std::vector<char> composite(limit + 1, 0);
  std::vector<u32> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

struct SieveOptions {
  u64 segment_size = u64{1} << 18;
  unsigned threads = 1;
  u64 memory_budget_bytes = u64{3} << 30;
};

/// Smallest-prime-factor table over the half-open range [lo, hi).
///
/// Built segment by segment; each segment is sieved only with the primes
/// <= sqrt(hi - 1), so segments are independent and the result does not
/// depend on the segment size or thread count. Immutable once built.
class SpfTable {
 public:
  static constexpr u64 kMaxHi = u64{1} << 32;

  static SpfTable build(u64 lo, u64 hi, const SieveOptions& opt = {}) {
    check_bounds(lo, hi, opt.memory_budget_bytes);
    if (opt.segment_size == 0) throw ParameterError("segment size must be positive");
    SpfTable t;
    t.lo_ = lo;
    t.hi_ = hi;
    t.base_primes_ = primes_up_to(isqrt(hi - 1));
    t.spf_.assign(hi - lo, 0);
    const u64 segments = (hi - lo + opt.segment_size - 1) / opt.segment_size;
    parallel_for(segments, opt.threads, [&](std::size_t s) {
      const u64 a = lo + s * opt.segment_size;
      const u64 b = std::min(hi, a + opt.segment_size);
      t.sieve_segment(a, b);
    });
    t.collect_primes();
    return t;
  }

  /// Adopts a raw spf array (e.g. from a checkpoint) after validating it.
  static SpfTable from_raw(u64 lo, u64 hi, std::vector<u32> spf) {
    check_bounds(lo, hi, ~u64{0});
    if (spf.size() != hi - lo) {
      throw DataCorruptionError("spf array length does not match [lo, hi)");
    }
    SpfTable t;
    t.lo_ = lo;
    t.hi_ = hi;
    t.base_primes_ = primes_up_to(isqrt(hi - 1));
    t.spf_ = std::move(spf);
    for (u64 n = lo; n < hi; ++n) {
      const u64 p = t.spf_[n - lo];
      const bool ok = p >= 2 && n % p == 0 &&
                      (p == n || static_cast<u128>(p) * p <= n);
      if (!ok) {
        throw DataCorruptionError("invalid spf entry at n = " + std::to_string(n));
      }
    }
    t.collect_primes();
    return t;
  }

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  bool contains(u64 n) const { return n >= lo_ && n < hi_; }

  u32 spf(u64 n) const {
    if (!contains(n)) {
      throw RangeError("n = " + std::to_string(n) + " outside spf table [" +
                       std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
    }
    return spf_[n - lo_];
  }

  bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }

  std::span<const u32> raw() const { return spf_; }
  std::span<const u32> base_primes() const { return base_primes_; }
  /// All primes in [lo, hi), ascending.
  std::span<const u32> primes() const { return primes_; }

  /// Primes p in [lo, hi) with p <= bound.
  std::span<const u32> primes_up_to_bound(u64 bound) const {
    const auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
  }

  /// Smallest prime factor of m for 2 <= m < hi, including values below lo
  /// (found by trial division with the base primes).
  u64 smallest_factor(u64 m) const {
    if (contains(m)) return spf_[m - lo_];
    if (m < 2 || m >= hi_) {
      throw RangeError("cannot find a factor of " + std::to_string(m) + " with this table");
    }
    for (u32 p : base_primes_) {
      if (static_cast<u64>(p) * p > m) break;
      if (m % p == 0) return p;
    }
    return m;
  }

 private:
  static void check_bounds(u64 lo, u64 hi, u64 budget) {
    if (lo < 2 || lo >= hi) throw ParameterError("spf table needs 2 <= lo < hi");
    if (hi > kMaxHi) throw ResourceError("spf table bound hi exceeds 2^32");
    const u64 bytes = (hi - lo) * sizeof(u32);
    if (bytes > budget) {
      throw ResourceError("spf table of " + std::to_string(hi - lo) + " entries (" +
                          std::to_string(bytes) + " bytes) exceeds the memory budget of " +
                          std::to_string(budget) + " bytes");
    }
  }

  void sieve_segment(u64 a, u64 b) {
    u32* seg = spf_.data() + (a - lo_);
    for (u32 p : base_primes_) {
      const u64 pp = static_cast<u64>(p) * p;
      if (pp >= b) break;
      u64 start = std::max(pp, (a + p - 1) / p * p);
      for (u64 m = start; m < b; m += p) {
        if (seg[m - a] == 0) seg[m - a] = p;
      }
    }
    for (u64 n = a; n < b; ++n) {
      if (seg[n - a] == 0) seg[n - a] = static_cast<u32>(n);
    }
  }

  void collect_primes() {
    primes_.clear();
    for (u64 n = lo_; n < hi_; ++n) {
      if (spf_[n - lo_] == n) primes_.push_back(static_cast<u32>(n));
    }
  }

  u64 lo_ = 2;
  u64 hi_ = 3;
  std::vector<u32> spf_;
  std::vector<u32> base_primes_;
  std::vector<u32> primes_;
};

inline SpfTable build_spf_table(u64 lo, u64 hi, const SieveOptions& opt = {}) {
  return SpfTable::build(lo, hi, opt);
}

/// Factorization of n using t. Requires n = 1 or lo <= n < hi.
inline Factorization factorize(u64 n, const SpfTable& t) {
  Factorization f;
  if (n == 1) return f;
  if (!t.contains(n)) {
    throw RangeError("cannot factorize " + std::to_string(n) + ": outside table [" +
                     std::to_string(t.lo()) + ", " + std::to_string(t.hi()) + ")");
  }
  u64 m = n;
  while (m > 1) {
    const u64 p = t.smallest_factor(m);
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.append(p, e);
  }
  return f;
}

}  // namespace tauphi

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "tauphi/errors.hpp"

namespace tauphi {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 checked_mul(u64 a, u64 b, const char* what = "product") {
  const u128 wide = static_cast<u128>(a) * b;
  if (wide > std::numeric_limits<u64>::max()) {
    throw OverflowError(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<u64>(wide);
}

inline u64 checked_lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b, "lcm");
}

inline u64 checked_pow(u64 base, unsigned exp) {
  u64 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base, "power");
  return out;
}

inline u128 checked_add(u128 a, u128 b) {
  const u128 sum = a + b;
  if (sum < a) throw OverflowError("128-bit accumulator overflow");
  return sum;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// floor(x) for a nonnegative real bound, as an integer.
inline u64 floor_bound(double x) {
  if (!(x >= 0.0)) return 0;
  if (x >= 1.8e19) throw OverflowError("bound does not fit in 64 bits");
  return static_cast<u64>(std::floor(x));
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace tauphi

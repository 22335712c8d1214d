#pragma once

#include <string>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/arith/spf_table.hpp"
#include "tauphi/errors.hpp"

namespace tauphi {

/// Integer bound floor(x), checked against a table that must start at 2 and
/// also cover p - 1 for every prime p <= x.
inline u64 covered_bound(const SpfTable& t, double x) {
  const u64 bound = floor_bound(x);
  if (t.lo() != 2 || bound >= t.hi()) {
    throw RangeError("sieve range [" + std::to_string(t.lo()) + ", " + std::to_string(t.hi()) +
                     ") does not cover x = " + std::to_string(bound));
  }
  return bound;
}

/// tau_z(p - 1) for a prime p in the table.
inline u64 shifted_rough_tau(u64 p, double z, const SpfTable& t) {
  return tau_rough(factorize(p - 1, t), z);
}

}  // namespace tauphi

#pragma once

#include <cmath>
#include <vector>

#include "tauphi/arith/spf_table.hpp"
#include "tauphi/numeric/compensated.hpp"
#include "tauphi/prime/coverage.hpp"
#include "tauphi/prime/rough_sums.hpp"

namespace tauphi {

/// Primes of one slice with their weights tau_z(p - 1)/p, ascending.
struct SliceMembers {
  std::vector<u64> primes;
  std::vector<double> weights;
};

/// Log-scale slice sums: T[j] sums tau_z(p - 1)/p over primes p <= x (and
/// p = 1 mod u) with j r <= log p / log x < (j + 1) r. A prime p = x sits at
/// coordinate 1, outside every half-open slice, and is left out.
struct SliceSumTable {
  double x = 0, z = 0, r = 0;
  u64 u = 1;
  std::vector<double> T;
  std::vector<SliceMembers> members;

  std::size_t size() const { return T.size(); }
  double total() const {
    CompensatedSum s;
    for (double t : T) s.add(t);
    return s.value();
  }
};

inline std::size_t slice_count(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw ParameterError("slice width r must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(1.0 / r));
}

/// Slice holding coordinate pos in [0, 1), or -1 for pos >= 1.
inline std::ptrdiff_t slice_of(double pos, double r, std::size_t count) {
  if (pos >= 1.0) return -1;
  auto j = static_cast<std::ptrdiff_t>(std::floor(pos / r));
  return std::min<std::ptrdiff_t>(j, static_cast<std::ptrdiff_t>(count) - 1);
}

inline SliceSumTable build_slice_table(double x, double z, double r, u64 u, const SpfTable& t) {
  if (u == 0) throw ParameterError("modulus u must be positive");
  SliceSumTable out;
  out.x = x;
  out.z = z;
  out.r = r;
  out.u = u;
  const std::size_t count = slice_count(r);
  out.T.assign(count, 0.0);
  out.members.resize(count);
  if (x < 2) return out;
  const u64 bound = covered_bound(t, x);
  std::vector<CompensatedSum> sums(count);
  for (u64 p : t.primes_up_to_bound(bound)) {
    if (u > 1 && p % u != 1) continue;
    const auto j = slice_of(log_position(p, x), r, count);
    if (j < 0) continue;
    const double w = static_cast<double>(shifted_rough_tau(p, z, t)) / static_cast<double>(p);
    sums[j].add(w);
    out.members[j].primes.push_back(p);
    out.members[j].weights.push_back(w);
  }
  for (std::size_t j = 0; j < count; ++j) out.T[j] = sums[j].value();
  return out;
}

}  // namespace tauphi

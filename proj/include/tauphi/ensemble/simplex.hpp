#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tauphi/errors.hpp"
#include "tauphi/numeric/checked.hpp"

namespace tauphi {

/// Grid cube B_s = prod_i [r s_i, r (s_i + 1)) in the covering of the simplex.
struct CubeIndex {
  std::vector<unsigned> s;

  unsigned dimension() const { return static_cast<unsigned>(s.size()); }
  u64 index_sum() const {
    u64 total = 0;
    for (unsigned v : s) total += v;
    return total;
  }
  friend bool operator==(const CubeIndex&, const CubeIndex&) = default;
  friend auto operator<=>(const CubeIndex&, const CubeIndex&) = default;
};

/// Side length (v^{3/2} log v)^{-1}; undefined at v = 1.
inline double cube_side(unsigned v) {
  if (v < 2) throw ParameterError("cube_side needs v >= 2");
  const double dv = v;
  return 1.0 / (dv * std::sqrt(dv) * std::log(dv));
}

/// Largest K with r (K + v) <= 1, i.e. the index-sum budget of cubes lying in
/// the closed simplex; -1 when even the origin cube sticks out.
inline std::int64_t simplex_budget(unsigned v, double r) {
  if (v < 1) throw ParameterError("dimension v must be >= 1");
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("cube side r must lie in (0, 1)");
  auto fits = [&](std::int64_t k) { return r * static_cast<double>(k + v) <= 1.0; };
  auto k = static_cast<std::int64_t>(std::floor(1.0 / r - v));
  if (k < -1) k = -1;
  while (k >= 0 && !fits(k)) --k;
  while (fits(k + 1)) ++k;
  return k;
}

inline u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 out = 1;
  for (u64 i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > ~u64{0}) throw OverflowError("binomial coefficient exceeds 64 bits");
  }
  return static_cast<u64>(out);
}

/// |M_v| = C(K + v, v): cubes with sum_i r (s_i + 1) <= 1.
inline u64 cube_count(unsigned v, double r) {
  const std::int64_t k = simplex_budget(v, r);
  if (k < 0) return 0;
  return binomial(static_cast<u64>(k) + v, v);
}

/// Visits every cube of M_v in lexicographic order.
inline void for_each_cube(unsigned v, double r, const std::function<void(const CubeIndex&)>& visit) {
  const std::int64_t k = simplex_budget(v, r);
  if (k < 0) return;
  CubeIndex cube{std::vector<unsigned>(v, 0)};
  std::function<void(unsigned, std::int64_t)> rec = [&](unsigned pos, std::int64_t left) {
    if (pos == v) {
      visit(cube);
      return;
    }
    for (std::int64_t s = 0; s <= left; ++s) {
      cube.s[pos] = static_cast<unsigned>(s);
      rec(pos + 1, left - s);
    }
    cube.s[pos] = 0;
  };
  rec(0, k);
}

inline std::vector<CubeIndex> enumerate_cubes(unsigned v, double r, u64 budget = 10'000'000) {
  const u64 count = cube_count(v, r);
  if (count > budget) {
    throw ResourceError(std::to_string(count) + " cubes exceed the enumeration budget of " +
                        std::to_string(budget));
  }
  std::vector<CubeIndex> out;
  out.reserve(count);
  for_each_cube(v, r, [&](const CubeIndex& c) { out.push_back(c); });
  return out;
}

/// Volume bounds around |M_v| r^v. Only the upper bound 1/v! is a theorem for
/// every (v, r); the two shrunken-simplex lower bounds are reported as is.
struct CoveringBounds {
  double covered_volume = 0.0;  // |M_v| r^v
  double simplex_volume = 0.0;  // 1/v!
  double lower_sqrt_shrink = 0.0;  // (1 - r sqrt v)^v / v!, 0 if the factor is negative
  double lower_linear_shrink = 0.0;  // (1 - v r)^v / v!, 0 if the factor is negative
};

inline CoveringBounds covering_bounds(unsigned v, double r) {
  CoveringBounds b;
  const double inv_fact = 1.0 / std::tgamma(v + 1.0);
  b.covered_volume = static_cast<double>(cube_count(v, r)) * std::pow(r, v);
  b.simplex_volume = inv_fact;
  b.lower_sqrt_shrink = std::pow(std::max(0.0, 1.0 - r * std::sqrt(double(v))), v) * inv_fact;
  b.lower_linear_shrink = std::pow(std::max(0.0, 1.0 - v * r), v) * inv_fact;
  return b;
}

}  // namespace tauphi

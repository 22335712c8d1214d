#pragma once

#include <cmath>
#include <vector>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/numeric/compensated.hpp"
#include "tauphi/prime/coverage.hpp"
#include "tauphi/prime/rough_sums.hpp"

namespace tauphi {

struct PoissonEntry {
  unsigned B = 0;
  u64 r = 0;
  double s = 0.0;
  double predicted_r = 0.0;
  double predicted_s = 0.0;
};

/// Per-B split of R_z(x) and S_z(x) by the number of distinct window primes
/// in (z, z^a] dividing p - 1. `entries` covers B = 0..B_max; primes with more
/// window factors go to the tail so the classes still partition R_z and S_z.
struct PoissonProfile {
  double x = 0, z = 0, a = 0;
  u64 r_total = 0;
  double s_total = 0.0;
  std::vector<PoissonEntry> entries;
  u64 tail_r = 0;
  double tail_s = 0.0;
};

struct PoissonOptions {
  /// Admissible z satisfy log(x)^(1/A) < z <= log(x)^A.
  double range_exponent = 2.0;
};

inline PoissonProfile poisson_profile(double x, double z, double a, unsigned B_max,
                                      const SpfTable& t, const PoissonOptions& opt = {}) {
  if (!(a > 1.0)) throw ParameterError("poisson_profile needs a > 1");
  const double lx = std::log(x);
  if (!(lx > 1.0) || !(z > std::pow(lx, 1.0 / opt.range_exponent)) ||
      !(z <= std::pow(lx, opt.range_exponent))) {
    throw ParameterError("z outside (log^(1/A) x, log^A x]");
  }
  const u64 bound = covered_bound(t, x);
  const double top = std::pow(z, a);

  PoissonProfile out;
  out.x = x;
  out.z = z;
  out.a = a;
  out.entries.resize(B_max + 1);
  std::vector<CompensatedSum> s(B_max + 2);
  CompensatedSum s_all;
  for (u64 p : t.primes_up_to_bound(bound)) {
    const auto f = factorize(p - 1, t);
    u64 w = 1;
    unsigned in_window = 0;
    for (const auto& [q, e] : f) {
      if (!above(q, z)) continue;
      w *= e + 1;
      if (at_most(q, top)) ++in_window;
    }
    const double term = static_cast<double>(w) / static_cast<double>(p);
    out.r_total += w;
    s_all.add(term);
    if (in_window <= B_max) {
      out.entries[in_window].r += w;
      s[in_window].add(term);
    } else {
      out.tail_r += w;
      s[B_max + 1].add(term);
    }
  }
  out.s_total = s_all.value();
  for (unsigned B = 0; B <= B_max; ++B) {
    auto& e = out.entries[B];
    e.B = B;
    e.s = s[B].value();
    const double weight = poisson_weight(a, B) / (a * a);
    e.predicted_r = weight * static_cast<double>(out.r_total);
    e.predicted_s = weight * out.s_total;
  }
  out.tail_s = s[B_max + 1].value();
  return out;
}

}  // namespace tauphi

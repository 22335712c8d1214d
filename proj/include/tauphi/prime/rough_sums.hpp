#pragma once

#include <cmath>
#include <vector>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/arith/spf_table.hpp"
#include "tauphi/numeric/compensated.hpp"
#include "tauphi/prime/coverage.hpp"

namespace tauphi {

struct RoughSums {
  u64 r = 0;       // sum of tau_z(p - 1)
  double s = 0.0;  // sum of tau_z(p - 1) / p, ascending p
};

/// R_{u,z}(x) and S_{u,z}(x): primes p <= x with p = 1 (mod u).
inline RoughSums rough_sums_cong(double x, double z, u64 u, const SpfTable& t) {
  if (u == 0) throw ParameterError("modulus u must be positive");
  const u64 bound = covered_bound(t, x);
  RoughSums out;
  CompensatedSum s;
  if (u == 1) {
    for (u64 p : t.primes_up_to_bound(bound)) {
      const u64 w = shifted_rough_tau(p, z, t);
      out.r += w;
      s.add(static_cast<double>(w) / static_cast<double>(p));
    }
  } else {
    for (u64 p = u + 1; p <= bound; p += u) {
      if (!t.is_prime(p)) continue;
      const u64 w = shifted_rough_tau(p, z, t);
      out.r += w;
      s.add(static_cast<double>(w) / static_cast<double>(p));
    }
  }
  out.s = s.value();
  return out;
}

inline RoughSums rough_sums(double x, double z, const SpfTable& t) {
  return rough_sums_cong(x, z, 1, t);
}

inline u64 r_sum(double x, double z, const SpfTable& t) { return rough_sums(x, z, t).r; }
inline double s_sum(double x, double z, const SpfTable& t) { return rough_sums(x, z, t).s; }

inline u64 r_sum_cong(double x, double z, u64 u, const SpfTable& t) {
  return rough_sums_cong(x, z, u, t).r;
}
inline double s_sum_cong(double x, double z, u64 u, const SpfTable& t) {
  return rough_sums_cong(x, z, u, t).s;
}

/// Primes q with lo < q <= hi, read from the table.
inline std::vector<u64> primes_in_window(double lo, double hi, const SpfTable& t) {
  std::vector<u64> out;
  for (u64 p : t.primes()) {
    if (!at_most(p, hi)) break;
    if (above(p, lo)) out.push_back(p);
  }
  if (floor_bound(hi) >= t.hi() && !std::isinf(hi)) {
    throw RangeError("prime window upper end " + std::to_string(hi) + " exceeds the sieve");
  }
  return out;
}

struct ClassSum {
  unsigned B = 0;
  u64 moduli = 0;  // |U_B| after dropping u > x - 1, whose sums are empty
  u64 r = 0;
  double s = 0.0;
  double predicted_r = 0.0;
  double predicted_s = 0.0;
};

struct ClassSumOptions {
  u64 modulus_budget = 2'000'000;
};

inline double poisson_weight(double a, unsigned B) {
  return std::pow(2.0 * std::log(a), B) / std::tgamma(B + 1.0);
}

/// Sums R_{u,z}(x) and S_{u,z}(x) over every squarefree u built from exactly
/// B distinct primes of the window (z, z^a].
inline ClassSum r_class_sum(double x, double z, double a, unsigned B, const SpfTable& t,
                            const ClassSumOptions& opt = {}) {
  if (!(a > 1.0)) throw ParameterError("r_class_sum needs a > 1");
  if (B > 3) throw ParameterError("r_class_sum enumerates at most B = 3 primes");
  const u64 bound = covered_bound(t, x);
  const auto window = primes_in_window(z, std::pow(z, a), t);
  const std::size_t m = window.size();
  const double combos = B == 0 ? 1.0 : std::tgamma(m + 1.0) / (std::tgamma(B + 1.0) * std::tgamma(m - B + 1.0));
  if (B <= m && combos > static_cast<double>(opt.modulus_budget)) {
    throw ResourceError("window (z, z^a] holds " + std::to_string(m) + " primes; " +
                        std::to_string(static_cast<u64>(combos)) + " moduli exceed the budget");
  }

  const RoughSums base = rough_sums(x, z, t);
  ClassSum out;
  out.B = B;
  out.predicted_r = poisson_weight(a, B) * static_cast<double>(base.r);
  out.predicted_s = poisson_weight(a, B) * base.s;

  CompensatedSum s;
  std::vector<std::size_t> idx(B);
  auto visit = [&](u64 u) {
    ++out.moduli;
    const RoughSums part = rough_sums_cong(x, z, u, t);
    out.r += part.r;
    s.add(part.s);
  };
  if (B == 0) {
    visit(1);
  } else if (B <= m) {
    // Lexicographic walk over B-subsets of the window.
    for (std::size_t i = 0; i < B; ++i) idx[i] = i;
    while (true) {
      u128 u = 1;
      for (std::size_t i : idx) u *= window[i];
      if (u < bound) visit(static_cast<u64>(u));
      int k = static_cast<int>(B) - 1;
      while (k >= 0 && idx[k] == m - B + static_cast<std::size_t>(k)) --k;
      if (k < 0) break;
      ++idx[k];
      for (std::size_t i = k + 1; i < B; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  out.s = s.value();
  return out;
}

struct RoughRatio {
  double ratio = 1.0;
  double predicted = 1.0;
  u64 r_z = 0;
  u64 r_za = 0;
};

/// R_{z^a}(x) / R_z(x) next to the limiting value 1/a.
inline RoughRatio rough_ratio(double x, double z, double a, const SpfTable& t) {
  if (!(a >= 1.0)) throw ParameterError("rough_ratio needs a >= 1");
  RoughRatio out;
  out.r_z = r_sum(x, z, t);
  out.r_za = a == 1.0 ? out.r_z : r_sum(x, std::pow(z, a), t);
  out.ratio = out.r_z == 0 ? 0.0 : static_cast<double>(out.r_za) / static_cast<double>(out.r_z);
  out.predicted = 1.0 / a;
  return out;
}

/// log p / log x, the coordinate of p on the unit interval.
inline double log_position(u64 p, double x) {
  return std::log(static_cast<double>(p)) / std::log(x);
}

/// Sum of tau_z(p - 1)/p over primes p = 1 (mod u) with alpha <= log p/log x < beta.
inline double slice_s_sum(double x, double z, double alpha, double beta, u64 u,
                          const SpfTable& t) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= 1.0)) {
    throw ParameterError("slice needs 0 <= alpha <= beta <= 1");
  }
  if (u == 0) throw ParameterError("modulus u must be positive");
  const u64 bound = covered_bound(t, x);
  CompensatedSum s;
  if (alpha == beta || bound < 2) return 0.0;
  for (u64 p : t.primes_up_to_bound(bound)) {
    if (u > 1 && p % u != 1) continue;
    const double pos = log_position(p, x);
    if (pos < alpha || pos >= beta) continue;
    s.add(static_cast<double>(shifted_rough_tau(p, z, t)) / static_cast<double>(p));
  }
  return s.value();
}

}  // namespace tauphi

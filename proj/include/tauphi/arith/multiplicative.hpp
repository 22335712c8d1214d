#pragma once

#include <cmath>
#include <limits>

#include "tauphi/arith/factorization.hpp"
#include "tauphi/arith/spf_table.hpp"
#include "tauphi/errors.hpp"
#include "tauphi/numeric/checked.hpp"

namespace tauphi {

/// Roughness thresholds. z (and w) are real; a prime p counts as "above z"
/// when p > z holds exactly, which double comparison gives for p < 2^53.
struct RoughnessParams {
  double z = 2.0;
  double w = std::numeric_limits<double>::infinity();

  RoughnessParams(double z_in) : z(z_in) { validate(); }
  RoughnessParams(double z_in, double w_in) : z(z_in), w(w_in) { validate(); }

 private:
  void validate() const {
    if (!(z > 1.0)) throw ParameterError("roughness threshold z must exceed 1");
    if (!(w > z)) throw ParameterError("window needs z < w");
  }
};

/// Sentinel for p(1): compares above every finite threshold.
inline constexpr u64 kInfinitePrime = std::numeric_limits<u64>::max();

inline bool above(u64 p, double z) {
  return p == kInfinitePrime || static_cast<double>(p) > z;
}
inline bool at_most(u64 p, double z) { return !above(p, z); }

inline u64 euler_phi(const Factorization& f) {
  u64 out = 1;
  for (const auto& [p, e] : f) {
    out = checked_mul(out, checked_mul(checked_pow(p, e - 1), p - 1));
  }
  return out;
}

/// lambda of a single prime power.
inline u64 carmichael_lambda_prime_power(u64 p, unsigned e) {
  if (p == 2 && e >= 3) return u64{1} << (e - 2);
  return checked_mul(checked_pow(p, e - 1), p - 1);
}

inline u64 carmichael_lambda(const Factorization& f) {
  u64 out = 1;
  for (const auto& [p, e] : f) out = checked_lcm(out, carmichael_lambda_prime_power(p, e));
  return out;
}

inline u64 tau(const Factorization& f) {
  u64 out = 1;
  for (const auto& pp : f) out = checked_mul(out, pp.exponent + 1);
  return out;
}

/// Divisor count of the z-rough part (primes p > z).
inline u64 tau_rough(const Factorization& f, double z) {
  u64 out = 1;
  for (const auto& [p, e] : f) {
    if (above(p, z)) out = checked_mul(out, e + 1);
  }
  return out;
}

/// Divisor count of the part with primes in (z, w].
inline u64 tau_window(const Factorization& f, double z, double w) {
  if (!(z < w)) throw ParameterError("tau_window needs z < w");
  u64 out = 1;
  for (const auto& [p, e] : f) {
    if (above(p, z) && at_most(p, w)) out = checked_mul(out, e + 1);
  }
  return out;
}

/// Divisor count of the z-smooth part (primes p <= z).
inline u64 tau_smooth(const Factorization& f, double z) {
  u64 out = 1;
  for (const auto& [p, e] : f) {
    if (at_most(p, z)) out = checked_mul(out, e + 1);
  }
  return out;
}

/// Product over distinct p | n of tau_rough(p - 1, z).
inline u64 tau_shifted_product(const Factorization& f, double z, const SpfTable& t) {
  u64 out = 1;
  for (const auto& pp : f) {
    out = checked_mul(out, tau_rough(factorize(pp.prime - 1, t), z));
  }
  return out;
}

struct MobiusOmega {
  /// p(1) is +infinity so that "p(u) > z" holds for u = 1.
  static constexpr u64 kInfinity = kInfinitePrime;

  int mu = 1;
  unsigned omega = 0;
  u64 smallest_prime = kInfinity;

  friend bool operator==(const MobiusOmega&, const MobiusOmega&) = default;
};

inline MobiusOmega mobius_omega(const Factorization& f) {
  MobiusOmega out;
  out.omega = static_cast<unsigned>(f.size());
  if (!f.empty()) out.smallest_prime = f[0].prime;
  bool squarefree = true;
  for (const auto& pp : f) squarefree = squarefree && pp.exponent == 1;
  out.mu = squarefree ? (out.omega % 2 == 0 ? 1 : -1) : 0;
  return out;
}

/// Number of distinct primes q | n with z < q <= z^a.
inline unsigned window_prime_count(const Factorization& f, double z, double a) {
  if (!(a > 1.0) || !(z > 1.0)) throw ParameterError("window needs z > 1 and a > 1");
  const double top = std::pow(z, a);
  unsigned count = 0;
  for (const auto& pp : f) {
    if (above(pp.prime, z) && at_most(pp.prime, top)) ++count;
  }
  return count;
}

}  // namespace tauphi

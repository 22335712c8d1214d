#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "tauphi/aggregate/totals.hpp"
#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/numeric/compensated.hpp"

namespace tauphi {

struct PartitionParams {
  double A = 0;
  unsigned k = 0;      // floor(A ln ln x)
  unsigned omega = 0;  // floor(sqrt(ln x) / (ln ln x)^2)
};

inline PartitionParams partition_params(double x, double A) {
  if (!(A > 0)) throw ParameterError("partition constant A must be positive");
  const double lx = std::log(x);
  const double llx = std::log(lx);
  if (!(llx > 0)) throw ParameterError("partition parameters need x > e^e");
  PartitionParams p;
  p.A = A;
  p.k = static_cast<unsigned>(std::floor(A * llx));
  p.omega = static_cast<unsigned>(std::floor(std::sqrt(lx) / (llx * llx)));
  return p;
}

struct PartitionClass {
  u64 count = 0;
  u128 sum_tau_lambda = 0;
  u128 sum_tau_phi = 0;
};

struct PartitionResult {
  u64 x = 0;
  PartitionParams params;
  std::array<PartitionClass, 3> classes;  // E1, E2, E3
};

/// E1: 2^k | n or some prime p | n has p = 1 (mod 2^k). E2: the rest with
/// omega(n) <= omega. E3: everything else.
inline PartitionResult partition_sums(u64 x, double A, const SpfTable& t, unsigned threads = 1) {
  PartitionResult out;
  out.x = x;
  out.params = partition_params(static_cast<double>(x), A);
  if (x >= 2) covered_bound(t, static_cast<double>(x));
  const unsigned k = out.params.k;
  const u64 two_k = k < 63 ? u64{1} << k : 0;  // 0: beyond every n <= x
  const unsigned workers = std::max(1u, threads);
  std::vector<std::array<PartitionClass, 3>> partial(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    auto& acc = partial[w];
    for (u64 n = 1 + w; n <= x; n += workers) {
      const Factorization f = factorize(n, t);
      const u64 lam = carmichael_lambda(f);
      const u64 phi = euler_phi(f);
      const u64 tau_lam = lam == 1 ? 1 : tau(factorize(lam, t));
      const u64 tau_phi = phi == 1 ? 1 : tau(factorize(phi, t));
      bool e1 = false;
      if (two_k != 0) {
        for (const auto& [p, e] : f) {
          if ((p == 2 && k <= e) || (p != 2 && (p - 1) % two_k == 0)) e1 = true;
        }
      }
      const int cls = e1 ? 0 : (f.size() <= out.params.omega ? 1 : 2);
      acc[cls].count += 1;
      acc[cls].sum_tau_lambda += tau_lam;
      acc[cls].sum_tau_phi += tau_phi;
    }
  });
  for (const auto& acc : partial) {
    for (int c = 0; c < 3; ++c) {
      out.classes[c].count += acc[c].count;
      out.classes[c].sum_tau_lambda += acc[c].sum_tau_lambda;
      out.classes[c].sum_tau_phi += acc[c].sum_tau_phi;
    }
  }
  return out;
}

struct ShortRangeRatio {
  double lhs = 0;      // sum_{n <= x/y} tau(phi(n)) / n
  u128 rhs_sum = 0;    // sum_{n <= x} tau(phi(n))
  double ratio = 0;    // lhs / ((ln x)^5 / x * rhs_sum)
};

inline ShortRangeRatio lemma41_ratio(u64 x, double y, const SpfTable& t, const TotalsOptions& opt = {}) {
  if (!(y >= 2 && y <= static_cast<double>(x))) throw ParameterError("lemma41 needs 2 <= y <= x");
  ShortRangeRatio out;
  const u64 cut = floor_bound(static_cast<double>(x) / y);
  if (cut >= 2) covered_bound(t, static_cast<double>(cut));
  CompensatedSum lhs;
  for (u64 n = 1; n <= cut; ++n) {
    const u64 phi = n <= 2 ? 1 : euler_phi(factorize(n, t));
    const u64 tp = phi == 1 ? 1 : tau(factorize(phi, t));
    lhs.add(static_cast<double>(tp) / static_cast<double>(n));
  }
  out.lhs = lhs.value();
  out.rhs_sum = totals(std::vector<u64>{x}, opt).back().sum_tau_phi;
  const double lx = std::log(static_cast<double>(x));
  out.ratio = out.lhs / (std::pow(lx, 5) / static_cast<double>(x) * static_cast<double>(out.rhs_sum));
  return out;
}

struct RatioPoint {
  u64 x = 0;
  double ratio = 0;
  double envelope = 0;  // (ln ln x)^3 / sqrt(ln x)
};

inline double ratio_envelope(double x) {
  const double lx = std::log(x);
  return std::pow(std::log(lx), 3) / std::sqrt(lx);
}

inline std::vector<RatioPoint> ratio_series(const std::vector<u64>& xs, const TotalsOptions& opt = {}) {
  std::vector<RatioPoint> out;
  for (const auto& row : totals(xs, opt)) out.push_back({row.x, row.ratio, ratio_envelope(double(row.x))});
  return out;
}

}  // namespace tauphi

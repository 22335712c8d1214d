#pragma once

// Exhaustive references for the ensemble code: cubes by brute force over a
// box, and tuple sums by nested loops over primes factored by trial division.

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "support/oracles.hpp"

namespace oracle {

// Closed-cube criterion sum_i r (s_i + 1) <= 1, with slack for binary r.
inline bool cube_inside(const std::vector<unsigned>& s, double r) {
  double sum = 0.0;
  for (unsigned si : s) sum += r * (si + 1);
  return sum <= 1.0 + 1e-12;
}

inline std::vector<std::vector<unsigned>> brute_force_cubes(unsigned v, double r) {
  const auto side = static_cast<unsigned>(std::ceil(1.0 / r)) + 1;
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> s(v, 0);
  while (true) {
    if (cube_inside(s, r)) out.push_back(s);
    unsigned i = v;
    while (i > 0) {
      --i;
      if (++s[i] < side) break;
      s[i] = 0;
      if (i == 0) return out;
    }
    if (v == 0) return out;
  }
}

struct WeightedPrime {
  u64 p;
  double weight;  // tau_z(p - 1) / p
  unsigned slice;
  std::vector<std::pair<u64, unsigned>> shifted;  // factorization of p - 1
};

// Primes p < x (p = 1 mod u) with their slice index; p with log p / log x >= 1 are dropped.
inline std::vector<WeightedPrime> weighted_primes(double x, double z, double r, u64 u = 1) {
  std::vector<WeightedPrime> out;
  for (u64 p : primes_below_or_equal(static_cast<u64>(std::floor(x)))) {
    if (u > 1 && p % u != 1) continue;
    const double pos = std::log(double(p)) / std::log(x);
    if (pos >= 1.0) continue;
    out.push_back({p, double(rough_divisor_count(p - 1, z)) / double(p),
                   static_cast<unsigned>(std::floor(pos / r)), trial_factor(p - 1)});
  }
  return out;
}

// Visits every v-tuple (one list per position) whose slice vector lies in M_v.
inline void for_each_tuple(const std::vector<std::vector<WeightedPrime>>& lists, double r,
                           const std::function<void(const std::vector<const WeightedPrime*>&)>& visit) {
  const auto v = lists.size();
  std::vector<const WeightedPrime*> cur(v);
  std::vector<unsigned> slices(v, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == v) {
      visit(cur);
      return;
    }
    for (const auto& wp : lists[i]) {
      slices[i] = wp.slice;
      for (std::size_t k = i + 1; k < v; ++k) slices[k] = 0;
      if (!cube_inside(slices, r)) break;  // slices ascend with p
      cur[i] = &wp;
      rec(i + 1);
    }
  };
  rec(0);
}

inline double nested_s_frak(const std::vector<std::vector<WeightedPrime>>& lists, double r) {
  double total = 0.0;
  for_each_tuple(lists, r, [&](const auto& tup) {
    double w = 1.0;
    for (const auto* wp : tup) w *= wp->weight;
    total += w;
  });
  return total;
}

struct EnsembleTruth {
  double s_frak = 0.0;
  double loss_r1 = 0.0, loss_r2 = 0.0, loss_r3 = 0.0;
  double ratio_mean = 0.0, ratio_second_moment = 0.0;
  std::map<u64, std::vector<double>> xq_pmf;
};

// Exact S-frak-weighted expectations for one list of primes at every position.
inline EnsembleTruth enumerate_truth(const std::vector<WeightedPrime>& primes, unsigned v, double z,
                                     double r, const std::vector<u64>& q_list) {
  EnsembleTruth out;
  for (u64 q : q_list) out.xq_pmf[q].assign(v + 1, 0.0);
  const std::vector<std::vector<WeightedPrime>> lists(v, primes);
  const double z2 = z * z;
  for_each_tuple(lists, r, [&](const auto& tup) {
    double w = 1.0;
    for (const auto* wp : tup) w *= wp->weight;
    out.s_frak += w;

    bool distinct = true;
    for (std::size_t i = 0; i < tup.size(); ++i)
      for (std::size_t j = i + 1; j < tup.size(); ++j) distinct &= tup[i]->p != tup[j]->p;
    bool square_free_shift = true;
    for (const auto* wp : tup)
      for (auto [q, e] : wp->shifted) square_free_shift &= !(e >= 2 && double(q) > z);
    // exponents of primes q > z^2 in phi(p_1 ... p_v) = prod (p_i - 1) for distinct p_i
    std::map<u64, unsigned> big;
    for (const auto* wp : tup)
      for (auto [q, e] : wp->shifted)
        if (double(q) > z2) big[q] += e;
    bool r3 = true;
    for (auto [q, e] : big) r3 &= e < 2;

    if (!distinct) {
      out.loss_r1 += w;
    } else if (!square_free_shift) {
      out.loss_r2 += w;
    } else if (!r3) {
      out.loss_r3 += w;
    }

    // window divisor counts of each p_i - 1 and of their lcm
    std::map<u64, unsigned> lcm_exp;
    double denom = 1.0;
    for (const auto* wp : tup) {
      for (auto [q, e] : wp->shifted) {
        if (double(q) > z && double(q) <= z2) {
          denom *= e + 1;
          lcm_exp[q] = std::max(lcm_exp[q], e);
        }
      }
    }
    double numer = 1.0;
    for (auto [q, e] : lcm_exp) numer *= e + 1;
    const double ratio = numer / denom;
    out.ratio_mean += w * ratio;
    out.ratio_second_moment += w * ratio * ratio;

    for (u64 q : q_list) {
      unsigned k = 0;
      for (const auto* wp : tup) k += (wp->p - 1) % q == 0;
      out.xq_pmf[q][k] += w;
    }
  });
  const double s = out.s_frak;
  out.loss_r1 /= s;
  out.loss_r2 /= s;
  out.loss_r3 /= s;
  out.ratio_mean /= s;
  out.ratio_second_moment /= s;
  for (auto& [q, pmf] : out.xq_pmf)
    for (double& pk : pmf) pk /= s;
  return out;
}

}  // namespace oracle

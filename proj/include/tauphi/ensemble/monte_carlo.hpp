#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/ensemble/sampler.hpp"
#include "tauphi/numeric/compensated.hpp"

namespace tauphi {

// Per-tuple predicates. Every tuple functional below is a pure function of
// the primes, so MC estimates and exhaustive sums share one definition.

/// R1: the primes are pairwise distinct.
inline bool satisfies_r1(std::span<const u64> primes) {
  std::vector<u64> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// R2: no q^2 | p_i - 1 for a prime q > z.
inline bool satisfies_r2(std::span<const u64> primes, double z, const SpfTable& t) {
  for (u64 p : primes) {
    for (const auto& [q, e] : factorize(p - 1, t)) {
      if (e >= 2 && above(q, z)) return false;
    }
  }
  return true;
}

/// R3: no q^2 | phi(p_1 ... p_v) for a prime q > z^2.
inline bool satisfies_r3(std::span<const u64> primes, double z, const SpfTable& t) {
  std::vector<u64> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<u64, unsigned>> big;  // primes q > z^2 of phi with exponents
  auto bump = [&](u64 q, unsigned e) {
    for (auto& [bq, be] : big) {
      if (bq == q) {
        be += e;
        return;
      }
    }
    big.emplace_back(q, e);
  };
  const double z2 = z * z;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const u64 p = sorted[i];
    const auto mult = static_cast<unsigned>(j - i);
    if (mult > 1 && above(p, z2)) bump(p, mult - 1);
    for (const auto& [q, e] : factorize(p - 1, t)) {
      if (above(q, z2)) bump(q, e);
    }
    i = j;
  }
  return std::none_of(big.begin(), big.end(), [](const auto& qe) { return qe.second >= 2; });
}

/// tau_{z,z^2}(lcm(p_i - 1)) / prod_i tau_{z,z^2}(p_i - 1); lies in (0, 1].
inline double lcm_window_ratio(std::span<const u64> primes, double z, const SpfTable& t) {
  const double z2 = z * z;
  std::vector<std::pair<u64, unsigned>> maxima;
  double denominator = 1.0;
  for (u64 p : primes) {
    for (const auto& [q, e] : factorize(p - 1, t)) {
      if (!above(q, z) || !at_most(q, z2)) continue;
      denominator *= e + 1;
      auto it = std::find_if(maxima.begin(), maxima.end(), [q](const auto& m) { return m.first == q; });
      if (it == maxima.end()) {
        maxima.emplace_back(q, e);
      } else {
        it->second = std::max(it->second, e);
      }
    }
  }
  double numerator = 1.0;
  for (const auto& m : maxima) numerator *= m.second + 1;
  return numerator / denominator;
}

/// X_q: number of components with q | p_i - 1.
inline unsigned count_divisible(std::span<const u64> primes, u64 q) {
  unsigned k = 0;
  for (u64 p : primes) k += (p - 1) % q == 0;
  return k;
}

struct RestrictionReport {
  double total = 0.0;  // S-frak
  double loss_r1 = 0.0, loss_r2 = 0.0, loss_r3 = 0.0;
  double stderr_r1 = 0.0, stderr_r2 = 0.0, stderr_r3 = 0.0;
  double s0 = 0.0;  // S-frak restricted to tuples meeting R1, R2 and R3
  double stderr_s0 = 0.0;
  u64 samples = 0;
  bool wide_interval = false;
};

inline double proportion_stderr(double p, u64 n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

/// Fractions of the S-frak mass lost to R1, then R2 among R1 survivors, then R3
/// among R1 and R2 survivors. The losses are disjoint, so
/// s0 = total * (1 - loss_r1 - loss_r2 - loss_r3).
inline RestrictionReport restriction_report(std::span<const TupleSample> samples, double z,
                                            const SpfTable& t, u64 min_samples = 1000) {
  RestrictionReport rep;
  rep.samples = samples.size();
  rep.wide_interval = samples.size() < min_samples;
  if (samples.empty()) return rep;
  rep.total = samples.front().weight;
  u64 bad1 = 0, bad2 = 0, bad3 = 0, good = 0;
  for (const auto& s : samples) {
    const bool r1 = satisfies_r1(s.primes);
    const bool r2 = satisfies_r2(s.primes, z, t);
    if (!r1) {
      ++bad1;
    } else if (!r2) {
      ++bad2;
    } else {
      if (satisfies_r3(s.primes, z, t)) {
        ++good;
      } else {
        ++bad3;
      }
    }
  }
  const auto n = static_cast<double>(samples.size());
  rep.loss_r1 = bad1 / n;
  rep.loss_r2 = bad2 / n;
  rep.loss_r3 = bad3 / n;
  rep.stderr_r1 = proportion_stderr(rep.loss_r1, rep.samples);
  rep.stderr_r2 = proportion_stderr(rep.loss_r2, rep.samples);
  rep.stderr_r3 = proportion_stderr(rep.loss_r3, rep.samples);
  const double keep = good / n;
  rep.s0 = rep.total * keep;
  rep.stderr_s0 = rep.total * proportion_stderr(keep, rep.samples);
  return rep;
}

struct MeanEstimate {
  double estimate = 0.0;
  double stderr = 0.0;
};

/// U-frak / S-frak as the mean lcm window ratio under the S-frak measure.
inline MeanEstimate u_over_s_estimate(std::span<const TupleSample> samples, double z,
                                      const SpfTable& t) {
  MeanEstimate out;
  if (samples.empty()) return out;
  CompensatedSum sum, sum_sq;
  for (const auto& s : samples) {
    const double f = lcm_window_ratio(s.primes, z, t);
    sum.add(f);
    sum_sq.add(f * f);
  }
  const auto n = static_cast<double>(samples.size());
  out.estimate = sum.value() / n;
  const double var = std::max(0.0, sum_sq.value() / n - out.estimate * out.estimate);
  out.stderr = samples.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return out;
}

inline double binomial_pmf(unsigned v, unsigned k, double p) {
  if (k > v) return 0.0;
  return std::exp(std::lgamma(v + 1.0) - std::lgamma(k + 1.0) - std::lgamma(v - k + 1.0)) *
         std::pow(p, k) * std::pow(1.0 - p, v - k);
}

struct XqMarginal {
  u64 q = 0;
  std::vector<double> empirical;  // P(X_q = k), k = 0..v
  std::vector<double> reference;  // binomial(v, 2/q)
  std::vector<double> stderr;
  double tv_distance = 0.0;
};

struct XqJoint {
  u64 q1 = 0, q2 = 0;
  std::vector<std::vector<double>> empirical;
  std::vector<std::vector<double>> reference;  // product of the two binomials
  double tv_distance = 0.0;
};

struct XqHistogram {
  unsigned v = 0;
  std::vector<XqMarginal> marginals;
  std::vector<XqJoint> joints;
};

inline XqHistogram xq_histogram(std::span<const TupleSample> samples, std::span<const u64> q_list,
                                double z) {
  XqHistogram out;
  for (u64 q : q_list) {
    if (!(above(q, z) && at_most(q, z * z))) {
      throw ParameterError("q = " + std::to_string(q) + " lies outside the window (z, z^2]");
    }
  }
  if (samples.empty()) return out;
  const unsigned v = static_cast<unsigned>(samples.front().primes.size());
  out.v = v;
  const auto n = static_cast<double>(samples.size());
  std::vector<std::vector<unsigned>> counts(q_list.size(), std::vector<unsigned>(samples.size()));
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (std::size_t i = 0; i < q_list.size(); ++i) {
      counts[i][s] = count_divisible(samples[s].primes, q_list[i]);
    }
  }
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    XqMarginal m;
    m.q = q_list[i];
    m.empirical.assign(v + 1, 0.0);
    for (unsigned k : counts[i]) m.empirical[k] += 1.0;
    for (unsigned k = 0; k <= v; ++k) {
      m.empirical[k] /= n;
      m.reference.push_back(binomial_pmf(v, k, 2.0 / static_cast<double>(m.q)));
      m.stderr.push_back(proportion_stderr(m.empirical[k], samples.size()));
      m.tv_distance += 0.5 * std::fabs(m.empirical[k] - m.reference[k]);
    }
    out.marginals.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    for (std::size_t j = i + 1; j < q_list.size(); ++j) {
      XqJoint jt;
      jt.q1 = q_list[i];
      jt.q2 = q_list[j];
      jt.empirical.assign(v + 1, std::vector<double>(v + 1, 0.0));
      for (std::size_t s = 0; s < samples.size(); ++s) jt.empirical[counts[i][s]][counts[j][s]] += 1.0;
      jt.reference.assign(v + 1, std::vector<double>(v + 1, 0.0));
      for (unsigned a = 0; a <= v; ++a) {
        for (unsigned b = 0; b <= v; ++b) {
          jt.empirical[a][b] /= n;
          jt.reference[a][b] = out.marginals[i].reference[a] * out.marginals[j].reference[b];
          jt.tv_distance += 0.5 * std::fabs(jt.empirical[a][b] - jt.reference[a][b]);
        }
      }
      out.joints.push_back(std::move(jt));
    }
  }
  return out;
}

}  // namespace tauphi

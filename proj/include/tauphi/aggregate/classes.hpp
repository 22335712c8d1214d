#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tauphi/arith/multiplicative.hpp"
#include "tauphi/numeric/compensated.hpp"
#include "tauphi/prime/coverage.hpp"

namespace tauphi {

struct ClassParams {
  double x = 0;
  unsigned v = 1;
  double z = 2;

  void validate() const {
    if (v < 1) throw ParameterError("class parameter v must be >= 1");
    if (!(z > 1)) throw ParameterError("class parameter z must exceed 1");
    if (!(x >= 1)) throw ParameterError("class parameter x must be >= 1");
  }
};

/// z = sqrt(ln x), v = floor(c sqrt(ln x / ln ln x)).
inline ClassParams scaled_class_params(double x, double c) {
  const double lx = std::log(x);
  const double llx = std::log(lx);
  if (!(llx > 0)) throw ParameterError("scaled class parameters need x > e^e");
  ClassParams p{x, static_cast<unsigned>(std::max(1.0, std::floor(c * std::sqrt(lx / llx)))),
                std::sqrt(lx)};
  return p;
}

/// p is a prime and no q^2 | p - 1 for a prime q > z.
inline bool classify_Q(u64 p, double z, const SpfTable& t) {
  if (p < 2 || !t.is_prime(p)) return false;
  for (const auto& [q, e] : factorize(p - 1, t)) {
    if (e >= 2 && above(q, z)) return false;
  }
  return true;
}

/// n <= x squarefree with exactly v prime factors, all in Q_z.
inline bool classify_N(u64 n, const ClassParams& cp, const SpfTable& t) {
  cp.validate();
  if (n < 1 || static_cast<double>(n) > cp.x) return false;
  const auto f = factorize(n, t);
  if (f.size() != cp.v) return false;
  for (const auto& [p, e] : f) {
    if (e != 1 || !classify_Q(p, cp.z, t)) return false;
  }
  return true;
}

/// n in N and no q^2 | phi(n) for a prime q > z^2.
inline bool classify_M(u64 n, const ClassParams& cp, const SpfTable& t) {
  if (!classify_N(n, cp, t)) return false;
  // n is squarefree, so phi(n) is the product of the p - 1
  std::vector<u64> big;
  for (const auto& pp : factorize(n, t)) {
    for (const auto& [q, e] : factorize(pp.prime - 1, t)) {
      if (!above(q, cp.z * cp.z)) continue;
      if (e >= 2 || std::find(big.begin(), big.end(), q) != big.end()) return false;
      big.push_back(q);
    }
  }
  return true;
}

struct ClassSums {
  double V_M = 0, W_M = 0, W_M_prime = 0;
  u64 members = 0;
};

struct MemberSumOptions {
  u64 node_budget = 200'000'000;
};

/// Sums of tau_z(lambda(n))/n, tau''_z(n)/n and tau''_{z^2}(n)/n over M,
/// walking v-subsets of Q_z-primes in increasing order.
inline ClassSums class_sums(const ClassParams& cp, const SpfTable& t, const MemberSumOptions& opt = {}) {
  cp.validate();
  ClassSums out;
  if (cp.x < 2) return out;
  const u64 bound = covered_bound(t, cp.x);
  const double z2 = cp.z * cp.z;

  struct QPrime {
    u64 p;
    Factorization shifted;
    double w_z, w_z2;  // tau_z(p - 1)/p, tau_{z^2}(p - 1)/p
  };
  std::vector<QPrime> qs;
  for (u64 p : t.primes_up_to_bound(bound)) {
    if (!classify_Q(p, cp.z, t)) continue;
    auto f = factorize(p - 1, t);
    const double dp = static_cast<double>(p);
    qs.push_back({p, f, tau_rough(f, cp.z) / dp, tau_rough(f, z2) / dp});
  }

  CompensatedSum V, W, W2;
  u64 nodes = 0;
  std::vector<std::size_t> chosen;
  // exponents of primes q > z^2 across the chosen p_i - 1
  std::vector<std::pair<u64, unsigned>> big;

  std::function<void(std::size_t, u64)> walk = [&](std::size_t from, u64 m) {
    if (++nodes > opt.node_budget) {
      throw ResourceError("class_sums exceeded its budget of " + std::to_string(opt.node_budget) +
                          " nodes after " + std::to_string(out.members) + " members");
    }
    const unsigned left = cp.v - static_cast<unsigned>(chosen.size());
    if (left == 0) {
      const double n = static_cast<double>(m);
      double wz = 1, wz2 = 1;
      std::vector<std::pair<u64, unsigned>> lcm;  // primes q > z with max exponent
      for (std::size_t i : chosen) {
        wz *= qs[i].w_z;
        wz2 *= qs[i].w_z2;
        for (const auto& [q, e] : qs[i].shifted) {
          if (!above(q, cp.z)) continue;
          auto it = std::find_if(lcm.begin(), lcm.end(), [q](const auto& l) { return l.first == q; });
          if (it == lcm.end()) {
            lcm.emplace_back(q, e);
          } else {
            it->second = std::max(it->second, e);
          }
        }
      }
      double tau_lambda = 1;
      for (const auto& l : lcm) tau_lambda *= l.second + 1;
      V.add(tau_lambda / n);
      W.add(wz);
      W2.add(wz2);
      ++out.members;
      return;
    }
    for (std::size_t j = from; j < qs.size(); ++j) {
      const u64 p = qs[j].p;
      // the remaining `left` primes are all >= p
      double smallest = static_cast<double>(m);
      for (unsigned i = 0; i < left; ++i) smallest *= static_cast<double>(p);
      if (smallest > cp.x) break;
      const std::size_t mark = big.size();
      bool clash = false;
      for (const auto& [q, e] : qs[j].shifted) {
        if (!above(q, z2)) continue;
        for (const auto& b : big) clash |= b.first == q;
        big.emplace_back(q, e);
      }
      // q^2 | phi(n) already for this prefix, so every extension fails too
      if (!clash) {
        chosen.push_back(j);
        walk(j + 1, m * p);
        chosen.pop_back();
      }
      big.resize(mark);
    }
  };
  walk(0, 1);
  out.V_M = V.value();
  out.W_M = W.value();
  out.W_M_prime = W2.value();
  return out;
}

struct SquarefreeTauSums {
  double sum_z = 0, sum_z2 = 0;
};

/// Sums of tau''_z(n)/n and tau''_{z^2}(n)/n over squarefree n <= x.
inline SquarefreeTauSums squarefree_tau2_sum(double x, double z, const SpfTable& t) {
  if (!(z > 1)) throw ParameterError("z must exceed 1");
  SquarefreeTauSums out;
  if (x < 1) return out;
  const u64 limit = floor_bound(x);
  const u64 bound = limit >= 2 ? covered_bound(t, x) : 1;
  const auto primes = t.primes_up_to_bound(bound);
  std::vector<double> wz(primes.size()), wz2(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto f = factorize(primes[i] - 1, t);
    wz[i] = static_cast<double>(tau_rough(f, z)) / primes[i];
    wz2[i] = static_cast<double>(tau_rough(f, z * z)) / primes[i];
  }
  CompensatedSum s1, s2;
  std::function<void(std::size_t, u64, double, double)> walk = [&](std::size_t from, u64 m, double a,
                                                                    double b) {
    s1.add(a);
    s2.add(b);
    for (std::size_t j = from; j < primes.size() && primes[j] <= limit / m; ++j) {
      walk(j + 1, m * primes[j], a * wz[j], b * wz2[j]);
    }
  };
  walk(0, 1, 1.0, 1.0);
  out.sum_z = s1.value();
  out.sum_z2 = s2.value();
  return out;
}

}  // namespace tauphi

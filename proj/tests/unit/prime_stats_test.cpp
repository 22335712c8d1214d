#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support/oracles.hpp"
#include "tauphi/prime/ap_counts.hpp"
#include "tauphi/prime/poisson.hpp"
#include "tauphi/prime/rough_sums.hpp"

using namespace tauphi;

namespace {

const SpfTable& table_1e4() {
  static const SpfTable t = build_spf_table(2, 10'001);
  return t;
}

const SpfTable& table_1e5() {
  static const SpfTable t = build_spf_table(2, 100'001);
  return t;
}

}  // namespace

TEST(PrimeCountAp, Examples) {
  const auto& t = table_1e4();
  EXPECT_EQ(prime_count_ap(20, 4, 1, t), 3u);  // 5, 13, 17
  EXPECT_EQ(prime_count_ap(10, 1, 0, t), 4u);
  EXPECT_EQ(prime_count_ap(3, 5, 1, t), 0u);
  EXPECT_EQ(prime_count_ap(20.9, 4, -3, t), 3u);
  EXPECT_THROW(prime_count_ap(20, 4, 2, t), ParameterError);
  EXPECT_THROW(prime_count_ap(20'000, 4, 1, t), RangeError);
}

TEST(PrimeCountAp, MatchesEnumeration) {
  const auto& t = table_1e4();
  const auto primes = oracle::primes_below_or_equal(3000);
  for (u64 q : {3u, 8u, 10u, 12u, 97u}) {
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      u64 ref = 0;
      for (u64 p : primes) ref += p % q == a;
      ASSERT_EQ(prime_count_ap(3000, q, static_cast<std::int64_t>(a), t), ref);
    }
  }
}

TEST(ApError, Examples) {
  const auto& t = table_1e4();
  EXPECT_DOUBLE_EQ(ap_error(20, 4, 1, t), -1.0);
  for (double x : {2.0, 17.0, 1000.0}) EXPECT_EQ(ap_error(x, 1, 0, t), 0.0);
  for (u64 q : {7u, 12u, 30u}) {
    double total = 0;
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) == 1) total += ap_error(5000, q, static_cast<std::int64_t>(a), t);
    }
    // Sum over reduced residues counts every prime not dividing q.
    u64 dividing = 0;
    for (u64 p : oracle::primes_below_or_equal(q)) dividing += q % p == 0;
    EXPECT_NEAR(total, -static_cast<double>(dividing), 1e-9) << q;
  }
}

TEST(EzSum, ExamplesAgainstRationalOracle) {
  const auto& t = table_1e4();
  // Frozen from an exact rational double-loop evaluation (sympy, Fraction).
  EXPECT_EQ(ez_sum(100, 2, 0, 1, t), 0.0);
  EXPECT_NEAR(ez_sum(100, 2, 10, 1, t), -61.0 / 12.0, 1e-12);
  EXPECT_NEAR(ez_sum(1000, 3, 50, 1, t), -7483.0 / 506.0, 1e-12);
  EXPECT_NEAR(ez_sum(1000, 3, 40, 5, t), -795.0 / 88.0, 1e-12);
  EXPECT_NEAR(ez_sum(2000, 5.5, 100, 7, t), -28.675276063447182, 1e-11);
}

TEST(EzSum, MobiusCollapseMatches) {
  // sum_{r | P_z} mu(r) [r | n] = [gcd(n, P_z) = 1], so the double sum equals a
  // single sum over n <= Q free of primes <= z.
  const auto& t = table_1e4();
  const double x = 8000, z = 5, Q = 600;
  const auto primes = oracle::primes_below_or_equal(8000);
  double ref = 0;
  for (u64 n = 1; n <= 600; ++n) {
    if (n > 1 && static_cast<double>(oracle::smallest_prime_factor(n)) <= z) continue;
    u64 in_class = 0;
    for (u64 p : primes) in_class += (p - 1) % n == 0;
    ref += static_cast<double>(in_class) -
           static_cast<double>(primes.size()) / static_cast<double>(oracle::unit_count(n));
  }
  EXPECT_NEAR(ez_sum(x, z, Q, 1, t), ref, 1e-9);
}

TEST(EzSum, EnvelopeAndErrors) {
  const auto& t = table_1e5();
  const double x = 100'000, Q = 1000;
  double trivial = 0;
  const auto counts = shifted_divisor_counts(100'000, t);
  const double pi_x = static_cast<double>(t.primes().size());
  for (u64 n = 1; n <= 1000; ++n) {
    trivial += static_cast<double>(counts[n]) + pi_x / static_cast<double>(oracle::unit_count(n));
  }
  EXPECT_LT(std::fabs(ez_sum(x, 2, Q, 1, t)), trivial);
  EXPECT_THROW(ez_sum(x, 3, Q, 6, t), ParameterError);  // p(6) = 2 <= z
  EXPECT_THROW(ez_sum(x, 3, 2 * x, 1, t), ParameterError);
  EXPECT_THROW(ez_sum(x, 40, Q, 1, t, {.divisor_budget = 50}), ResourceError);
}

TEST(RoughSums, Examples) {
  const auto& t = table_1e4();
  EXPECT_EQ(r_sum(50, 3, t), 22u);
  EXPECT_NEAR(s_sum(50, 3, t), 1.9316973455318793, 1e-13);
  EXPECT_NEAR(s_sum(50, 3, t), 1.9317, 1e-4);
  for (double x : {2.0, 50.0, 997.0}) {
    EXPECT_EQ(r_sum(x, x, t), t.primes_up_to_bound(static_cast<u64>(x)).size());
  }
  EXPECT_THROW(r_sum(20'000, 3, t), RangeError);
}

TEST(RoughSums, CongruenceExamples) {
  const auto& t = table_1e4();
  EXPECT_EQ(r_sum_cong(50, 3, 5, t), 6u);
  EXPECT_EQ(r_sum_cong(50, 3, 49, t), 0u);
  EXPECT_EQ(r_sum_cong(50, 3, 50, t), 0u);
  EXPECT_EQ(r_sum_cong(5000, 3, 1, t), r_sum(5000, 3, t));
  EXPECT_DOUBLE_EQ(s_sum_cong(5000, 3, 1, t), s_sum(5000, 3, t));
  EXPECT_THROW(r_sum_cong(50, 3, 0, t), ParameterError);
}

TEST(RoughSums, DivisorSwitchingIdentity) {
  // R_z(x) = sum over d <= x with d = 1 or p(d) > z of pi(x; d, 1).
  const auto& t = table_1e4();
  const u64 x = 10'000;
  std::vector<char> prime(x + 1, 1);
  prime[0] = prime[1] = 0;
  for (u64 i = 2; i * i <= x; ++i) {
    if (prime[i]) {
      for (u64 j = i * i; j <= x; j += i) prime[j] = 0;
    }
  }
  const std::pair<double, u64> frozen[] = {{2, 6776}, {3, 4143}, {5, 3317}};
  for (auto [z, expected] : frozen) {
    u64 identity = 0;
    for (u64 d = 1; d <= x; ++d) {
      if (d > 1 && static_cast<double>(oracle::smallest_prime_factor(d)) <= z) continue;
      for (u64 p = d + 1; p <= x; p += d) identity += prime[p];
    }
    EXPECT_EQ(r_sum(10'000, z, t), identity) << z;
    EXPECT_EQ(identity, expected);
  }
}

TEST(RoughSums, Monotonicity) {
  const auto& t = table_1e5();
  u64 prev = ~u64{0};
  for (double z : {1.5, 2.0, 3.0, 4.5, 7.0, 11.0, 50.0, 1000.0}) {
    const u64 r = r_sum(100'000, z, t);
    EXPECT_LE(r, prev) << z;
    prev = r;
  }
  const u64 full = r_sum(100'000, 3, t);
  for (u64 u : {2u, 5u, 7u, 11u, 35u, 1001u}) EXPECT_LE(r_sum_cong(100'000, 3, u, t), full);
}

TEST(ClassSum, Examples) {
  const auto& t = table_1e4();
  const auto b0 = r_class_sum(1000, 3, 2, 0, t);
  EXPECT_EQ(b0.r, r_sum(1000, 3, t));
  EXPECT_EQ(b0.r, 418u);
  const auto b1 = r_class_sum(1000, 3, 2, 1, t);  // window (3, 9] = {5, 7}
  EXPECT_EQ(b1.moduli, 2u);
  EXPECT_EQ(b1.r, r_sum_cong(1000, 3, 5, t) + r_sum_cong(1000, 3, 7, t));
  EXPECT_EQ(b1.r, 144u + 100u);
  const auto b2 = r_class_sum(1000, 3, 2, 2, t);
  EXPECT_EQ(b2.r, 40u);
  EXPECT_NEAR(b1.predicted_r, 2 * std::log(2.0) * 418, 1e-9);
  EXPECT_THROW(r_class_sum(1000, 3, 2, 4, t), ParameterError);
  EXPECT_THROW(r_class_sum(1000, 3, 1, 1, t), ParameterError);
  EXPECT_THROW(r_class_sum(10'000, 2, 8, 3, t, {.modulus_budget = 1000}), ResourceError);
}

TEST(ClassSum, MatchesBinomialCountIdentity) {
  // Each prime contributes tau_z(p-1) once per B-subset of its window primes.
  const auto& t = table_1e5();
  const double x = 100'000, z = 5, a = 2.2;
  const double top = std::pow(z, a);
  for (unsigned B = 0; B <= 3; ++B) {
    u64 ref = 0;
    for (u64 p : oracle::primes_below_or_equal(100'000)) {
      u64 w = 0, rough = 1;
      for (auto [q, e] : oracle::trial_factor(p - 1)) {
        if (q > z) rough *= e + 1;
        if (q > z && q <= top) ++w;
      }
      u64 choose = 1;
      for (unsigned i = 0; i < B; ++i) choose = choose * (w - i) / (i + 1);
      if (w < B) choose = 0;
      ref += choose * rough;
    }
    EXPECT_EQ(r_class_sum(x, z, a, B, t).r, ref) << B;
  }
}

TEST(Poisson, PartitionAndPrediction) {
  const auto& t = table_1e4();
  const auto prof = poisson_profile(1000, 3, 2, 3, t);
  EXPECT_EQ(prof.r_total, 418u);
  EXPECT_EQ(prof.entries[0].r, 214u);
  EXPECT_EQ(prof.entries[1].r, 164u);
  EXPECT_EQ(prof.entries[2].r, 40u);
  EXPECT_EQ(prof.entries[3].r, 0u);
  EXPECT_DOUBLE_EQ(prof.entries[0].predicted_r, 418.0 / 4.0);

  const auto big = poisson_profile(100'000, std::log(100'000.0), 2, 1, table_1e5());
  u64 total = big.tail_r;
  CompensatedSum s;
  for (const auto& e : big.entries) {
    total += e.r;
    s.add(e.s);
  }
  s.add(big.tail_s);
  EXPECT_EQ(total, r_sum(100'000, std::log(100'000.0), table_1e5()));
  EXPECT_NEAR(s.value(), s_sum(100'000, std::log(100'000.0), table_1e5()), 1e-12 * s.value());
  EXPECT_THROW(poisson_profile(100'000, 1000, 2, 1, table_1e5()), ParameterError);
}

TEST(RoughRatio, Basics) {
  const auto& t = table_1e5();
  EXPECT_EQ(rough_ratio(100'000, 5, 1, t).ratio, 1.0);
  double prev = 2.0;
  for (double a : {1.0, 1.25, 1.5, 2.0, 3.0}) {
    const auto rr = rough_ratio(100'000, 5, a, t);
    EXPECT_LE(rr.ratio, prev);
    EXPECT_DOUBLE_EQ(rr.predicted, 1.0 / a);
    prev = rr.ratio;
  }
}

TEST(SliceSum, Examples) {
  const auto& t = table_1e4();
  EXPECT_EQ(slice_s_sum(5000, 3, 0.3, 0.3, 1, t), 0.0);
  EXPECT_NEAR(slice_s_sum(2500, 3, 0.0, 0.5, 1, t), 1.9316973455318793, 1e-13);
  // x = 9973 is prime: the full slice drops p = x itself.
  const double with_x = s_sum(9973, 3, t);
  const double boundary = static_cast<double>(shifted_rough_tau(9973, 3, t)) / 9973.0;
  EXPECT_NEAR(slice_s_sum(9973, 3, 0, 1, 1, t), with_x - boundary, 1e-12);
  EXPECT_NEAR(slice_s_sum(10'000, 3, 0, 1, 1, t), s_sum(10'000, 3, t), 1e-12);
  EXPECT_THROW(slice_s_sum(100, 3, 0.6, 0.5, 1, t), ParameterError);
}

TEST(SliceSum, PartitionSumsToTotal) {
  const auto& t = table_1e5();
  for (u64 u : {1u, 7u}) {
    for (int k : {3, 7, 10}) {
      CompensatedSum total;
      for (int j = 0; j < k; ++j) {
        total.add(slice_s_sum(100'000, 3, double(j) / k, j + 1 == k ? 1.0 : double(j + 1) / k, u, t));
      }
      const double ref = s_sum_cong(100'000, 3, u, t);
      EXPECT_NEAR(total.value(), ref, 1e-12 * ref) << u << " " << k;
    }
  }
}

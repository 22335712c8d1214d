// Weighted prime tuples: exact S-frak, then a sampled estimate of the restriction losses.
#include <cstdio>

#include "tauphi/ensemble/monte_carlo.hpp"

int main() {
  using namespace tauphi;
  const double x = 1e5, z = 5, r = 0.1;
  const unsigned v = 3;
  const auto t = build_spf_table(2, u64(x) + 1);
  const auto table = build_slice_table(x, z, r, 1, t);
  std::printf("cubes inside the simplex: %llu, S-frak = %.6f\n", (unsigned long long)cube_count(v, r),
              s_frak(v, table));
  const auto samples = sample_tuples(table, v, 200'000, 1);
  const auto rep = restriction_report(samples, z, t);
  std::printf("losses: %.4f +- %.4f, %.4f +- %.4f, %.4f +- %.4f\n", rep.loss_r1, rep.stderr_r1, rep.loss_r2,
              rep.stderr_r2, rep.loss_r3, rep.stderr_r3);
  std::printf("restricted sum %.6f +- %.6f\n", rep.s0, rep.stderr_s0);
  const auto us = u_over_s_estimate(samples, z, t);
  std::printf("U/S %.5f +- %.5f\n", us.estimate, us.stderr);
}

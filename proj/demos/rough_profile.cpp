// R_z(x), S_z(x) at z = ln x and their split by window primes in (z, z^2].
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "tauphi/prime/poisson.hpp"

int main(int argc, char** argv) {
  using namespace tauphi;
  const double x = argc > 1 ? std::atof(argv[1]) : 1e6;
  const double z = std::log(x);
  const auto t = build_spf_table(2, u64(x) + 1);
  const auto prof = poisson_profile(x, z, 2, 3, t);
  std::printf("x = %.0f, z = %.3f: R = %llu, S = %.6f\n", x, z, (unsigned long long)prof.r_total, prof.s_total);
  for (const auto& e : prof.entries) {
    std::printf("  B=%u  R share %.4f (limit %.4f)  S share %.4f\n", e.B, double(e.r) / double(prof.r_total),
                e.predicted_r / double(prof.r_total), e.s / prof.s_total);
  }
  const auto ratio = rough_ratio(x, z, 2, t);
  std::printf("R_{z^2}/R_z = %.4f (limit %.2f)\n", ratio.ratio, ratio.predicted);
}

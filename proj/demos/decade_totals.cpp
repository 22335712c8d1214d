// Sum of tau(phi(n)) and tau(lambda(n)) at each power of ten up to the argument.
#include <cstdio>
#include <cstdlib>

#include "tauphi/aggregate/totals.hpp"

int main(int argc, char** argv) {
  const tauphi::u64 x = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000;
  std::printf("%12s %16s %16s %9s %9s\n", "x", "sum tau(phi)", "sum tau(lambda)", "ratio", "exponent");
  for (const auto& row : tauphi::totals(tauphi::decade_checkpoints(x))) {
    std::printf("%12llu %16s %16s %9.6f %9.6f\n", (unsigned long long)row.x,
                tauphi::to_string(row.sum_tau_phi).c_str(), tauphi::to_string(row.sum_tau_lambda).c_str(),
                row.ratio, row.exponent_phi);
  }
}

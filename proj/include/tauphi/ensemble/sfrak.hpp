#pragma once

#include <map>
#include <span>
#include <vector>

#include "tauphi/ensemble/simplex.hpp"
#include "tauphi/ensemble/slice_table.hpp"

namespace tauphi {

/// Budget-indexed partial sums: layer[i][b] is the sum over (s_1..s_i) with
/// s_1 + ... + s_i = b of prod T_k[s_k], for the last i positions.
///
/// Built from the back so that layer[v - i] describes the positions still to
/// be chosen after position i; the sampler walks it front to back.
class SimplexConvolution {
 public:
  SimplexConvolution(std::span<const SliceSumTable* const> positions, double r)
      : v_(static_cast<unsigned>(positions.size())), budget_(simplex_budget(v_, r)) {
    if (budget_ < 0) return;
    const auto K = static_cast<std::size_t>(budget_);
    for (const auto* t : positions) {
      if (t->r != r) throw ParameterError("slice tables disagree on the cube side r");
    }
    exact_.assign(v_ + 1, std::vector<double>(K + 1, 0.0));
    exact_[0][0] = 1.0;
    for (unsigned i = 1; i <= v_; ++i) {
      const auto& T = positions[v_ - i]->T;
      for (std::size_t b = 0; b <= K; ++b) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= b && j < T.size(); ++j) acc += T[j] * exact_[i - 1][b - j];
        exact_[i][b] = acc;
      }
    }
    cumulative_.assign(v_ + 1, std::vector<double>(K + 1, 0.0));
    for (unsigned i = 0; i <= v_; ++i) {
      double acc = 0.0;
      for (std::size_t b = 0; b <= K; ++b) {
        acc += exact_[i][b];
        cumulative_[i][b] = acc;
      }
    }
  }

  unsigned dimension() const { return v_; }
  std::int64_t budget() const { return budget_; }

  /// Sum over cubes of M_v of prod_i T_i[s_i].
  double total() const { return budget_ < 0 ? 0.0 : cumulative_[v_][static_cast<std::size_t>(budget_)]; }

  /// Weight of all completions of `remaining` trailing positions that use at
  /// most `left` index budget.
  double completions(unsigned remaining, std::int64_t left) const {
    if (left < 0 || budget_ < 0) return 0.0;
    return cumulative_[remaining][static_cast<std::size_t>(left)];
  }

 private:
  unsigned v_;
  std::int64_t budget_;
  std::vector<std::vector<double>> exact_;
  std::vector<std::vector<double>> cumulative_;
};

inline double s_frak(unsigned v, const SliceSumTable& table) {
  if (v < 1) throw ParameterError("s_frak needs v >= 1");
  std::vector<const SliceSumTable*> positions(v, &table);
  return SimplexConvolution(positions, table.r).total();
}

struct SFrakCongOptions {
  unsigned max_nontrivial = 8;
};

/// As s_frak, but position i only sums primes p = 1 (mod u[i]).
inline double s_frak_cong(double x, double z, double r, std::span<const u64> u, const SpfTable& t,
                          const SFrakCongOptions& opt = {}) {
  if (u.empty()) throw ParameterError("s_frak_cong needs at least one modulus");
  unsigned nontrivial = 0;
  for (u64 m : u) {
    if (m == 0) throw ParameterError("moduli must be positive");
    nontrivial += m != 1;
  }
  if (nontrivial > opt.max_nontrivial) {
    throw ResourceError(std::to_string(nontrivial) + " nontrivial moduli exceed the budget of " +
                        std::to_string(opt.max_nontrivial));
  }
  std::map<u64, SliceSumTable> tables;
  for (u64 m : u) {
    if (!tables.contains(m)) tables.emplace(m, build_slice_table(x, z, r, m, t));
  }
  std::vector<const SliceSumTable*> positions;
  for (u64 m : u) positions.push_back(&tables.at(m));
  return SimplexConvolution(positions, r).total();
}

}  // namespace tauphi

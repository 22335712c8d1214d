#pragma once

#include <algorithm>
#include <vector>

#include "tauphi/ensemble/counter_rng.hpp"
#include "tauphi/ensemble/sfrak.hpp"
#include "tauphi/numeric/parallel.hpp"

namespace tauphi {

/// One v-tuple of primes drawn from the measure proportional to
/// prod tau_z(p_i - 1)/p_i over tuples whose log-vector lies in a cube of M_v.
struct TupleSample {
  std::vector<u64> primes;
  double weight = 0.0;  // importance weight: S-frak total, since draws are exact
  CubeIndex cube;
};

namespace detail {

inline std::size_t pick(const std::vector<double>& cumulative, double u) {
  const double target = u * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  auto idx = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(idx, cumulative.size() - 1);
}

}  // namespace detail

class TupleSampler {
 public:
  TupleSampler(const SliceSumTable& table, unsigned v)
      : table_(table), v_(v), positions_(v, &table), conv_(positions_, table.r) {
    if (v < 1) throw ParameterError("sampling needs v >= 1");
    if (!(conv_.total() > 0.0)) {
      throw ParameterError("empty support: no prime tuple lies in a cube of M_v");
    }
    prefix_.resize(table.size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      double acc = 0.0;
      for (double w : table.members[j].weights) {
        acc += w;
        prefix_[j].push_back(acc);
      }
    }
  }

  double total() const { return conv_.total(); }
  unsigned dimension() const { return v_; }

  TupleSample draw(std::uint64_t seed, std::uint64_t index) const {
    CounterRng rng(seed, index);
    TupleSample out;
    out.weight = conv_.total();
    out.cube.s.resize(v_);
    out.primes.resize(v_);
    std::int64_t left = conv_.budget();
    std::vector<double> cube_weights;
    for (unsigned i = 0; i < v_; ++i) {
      // P(s_i = j | earlier choices) is proportional to T[j] * completions.
      cube_weights.assign(static_cast<std::size_t>(left) + 1, 0.0);
      double acc = 0.0;
      for (std::int64_t j = 0; j <= left && j < static_cast<std::int64_t>(table_.size()); ++j) {
        acc += table_.T[j] * conv_.completions(v_ - i - 1, left - j);
        cube_weights[static_cast<std::size_t>(j)] = acc;
      }
      for (std::size_t j = 1; j < cube_weights.size(); ++j) {
        cube_weights[j] = std::max(cube_weights[j], cube_weights[j - 1]);
      }
      std::size_t j = detail::pick(cube_weights, rng.uniform());
      while (j > 0 && cube_weights[j] == cube_weights[j - 1]) --j;
      out.cube.s[i] = static_cast<unsigned>(j);
      left -= static_cast<std::int64_t>(j);
      out.primes[i] = table_.members[j].primes[detail::pick(prefix_[j], rng.uniform())];
    }
    return out;
  }

 private:
  const SliceSumTable& table_;
  unsigned v_;
  std::vector<const SliceSumTable*> positions_;
  SimplexConvolution conv_;
  std::vector<std::vector<double>> prefix_;
};

/// `count` samples; sample i depends only on (seed, first_index + i).
inline std::vector<TupleSample> sample_tuples(const SliceSumTable& table, unsigned v, u64 count,
                                              std::uint64_t seed, unsigned threads = 1,
                                              u64 first_index = 0) {
  const TupleSampler sampler(table, v);
  std::vector<TupleSample> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = sampler.draw(seed, first_index + i); });
  return out;
}

}  // namespace tauphi

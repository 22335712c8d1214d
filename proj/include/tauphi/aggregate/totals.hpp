#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tauphi/arith/spf_table.hpp"
#include "tauphi/numeric/bytes.hpp"
#include "tauphi/numeric/checked.hpp"
#include "tauphi/numeric/parallel.hpp"

namespace tauphi {

// Exact sums of tau(phi(n)) and tau(lambda(n)) over n <= x at a list of
// checkpoints.
//
// Every n <= x is either sqrt(x)-smooth or n = m P with a single prime
// P > sqrt(x) and m < sqrt(x). The smooth part is a depth-first walk over
// prime powers that keeps the exponent vectors of phi(n) and lambda(n) with an
// undo log. The rest is handled per segment of P: P - 1 is factored by a
// residual sieve over the segment, then merged into the precomputed exponent
// vectors of every m <= x / P. Segments are the unit of checkpointing.

struct TotalsRow {
  u64 x = 0;
  u128 sum_tau_phi = 0;
  u128 sum_tau_lambda = 0;
  double ratio = 0.0;
  double exponent_phi = 0.0;
  double exponent_lambda = 0.0;
};

/// ln(sum / x) / sqrt(ln x / ln ln x); NaN when ln ln x <= 0.
inline double totals_exponent(u128 sum, u64 x) {
  const double lx = std::log(static_cast<double>(x));
  const double llx = std::log(lx);
  if (!(llx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(static_cast<double>(sum) / static_cast<double>(x)) / std::sqrt(lx / llx);
}

inline TotalsRow make_totals_row(u64 x, u128 sum_phi, u128 sum_lambda) {
  TotalsRow row{x, sum_phi, sum_lambda};
  row.ratio = static_cast<double>(sum_lambda) / static_cast<double>(sum_phi);
  row.exponent_phi = totals_exponent(sum_phi, x);
  row.exponent_lambda = totals_exponent(sum_lambda, x);
  return row;
}

/// 10, 100, ... below x, then x itself.
inline std::vector<u64> decade_checkpoints(u64 x) {
  std::vector<u64> out;
  for (u64 c = 10; c < x; c *= 10) out.push_back(c);
  out.push_back(x);
  return out;
}

struct TotalsOptions {
  u64 segment_size = 1 << 18;
  unsigned threads = 1;
};

/// Resumable state. Bucket b holds the contribution of n in
/// (checkpoints[b - 1], checkpoints[b]].
struct TotalsProgress {
  bool smooth_done = false;
  u64 next_segment = 0;
  std::vector<u128> bucket_phi;
  std::vector<u128> bucket_lambda;
};

inline std::string encode_totals_progress(const TotalsProgress& p) {
  std::string out;
  put_le(out, p.smooth_done ? 1 : 0, 1);
  put_le(out, p.next_segment, 8);
  put_le(out, p.bucket_phi.size(), 8);
  for (std::size_t i = 0; i < p.bucket_phi.size(); ++i) {
    for (u128 v : {p.bucket_phi[i], p.bucket_lambda[i]}) {
      put_le(out, static_cast<u64>(v), 8);
      put_le(out, static_cast<u64>(v >> 64), 8);
    }
  }
  return out;
}

inline TotalsProgress decode_totals_progress(std::string_view in) {
  TotalsProgress p;
  p.smooth_done = get_le(in, 0, 1) != 0;
  p.next_segment = get_le(in, 1, 8);
  const u64 n = get_le(in, 9, 8);
  if (in.size() != 17 + 32 * n) throw DataCorruptionError("totals progress has the wrong length");
  std::size_t off = 17;
  for (u64 i = 0; i < n; ++i) {
    u128 vals[2];
    for (u128& v : vals) {
      v = static_cast<u128>(get_le(in, off, 8)) | (static_cast<u128>(get_le(in, off + 8, 8)) << 64);
      off += 16;
    }
    p.bucket_phi.push_back(vals[0]);
    p.bucket_lambda.push_back(vals[1]);
  }
  return p;
}

class TotalsEngine {
 public:
  TotalsEngine(std::vector<u64> checkpoints, const TotalsOptions& opt = {})
      : checkpoints_(std::move(checkpoints)), opt_(opt) {
    if (checkpoints_.empty()) throw ParameterError("totals needs at least one checkpoint");
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
      if (checkpoints_[i] < 1 || (i > 0 && checkpoints_[i] <= checkpoints_[i - 1])) {
        throw ParameterError("checkpoints must be positive and strictly increasing");
      }
    }
    if (opt_.segment_size < 1) throw ParameterError("segment size must be positive");
    x_ = checkpoints_.back();
    // tau(phi(n)) < n keeps every prefix sum below x^2, far inside 128 bits.
    if (x_ >= (u64{1} << 32)) throw RangeError("totals is limited to x < 2^32");
    s_ = isqrt(x_);
    small_ = SpfTable::build(2, s_ + 2);
    for (u32 p : small_.primes()) {
      if (p <= s_) primes_.push_back(p);
    }
    build_shift_factors();
    build_cofactor_states();
  }

  u64 x() const { return x_; }
  const std::vector<u64>& checkpoints() const { return checkpoints_; }

  u64 segment_count() const {
    if (x_ <= s_) return 0;
    return (x_ - s_ + opt_.segment_size - 1) / opt_.segment_size;
  }

  TotalsProgress fresh() const {
    TotalsProgress p;
    p.bucket_phi.assign(checkpoints_.size(), 0);
    p.bucket_lambda.assign(checkpoints_.size(), 0);
    return p;
  }

  /// Advances `p` to completion. `on_step` runs after the smooth pass and after
  /// every segment; returning false stops early with `p` resumable.
  bool run(TotalsProgress& p, const std::function<bool(const TotalsProgress&)>& on_step = {}) const {
    if (p.bucket_phi.size() != checkpoints_.size() || p.bucket_lambda.size() != checkpoints_.size()) {
      throw DataCorruptionError("totals progress does not match the checkpoint list");
    }
    if (!p.smooth_done) {
      smooth_pass(p);
      p.smooth_done = true;
      if (on_step && !on_step(p)) return p.next_segment >= segment_count();
    }
    while (p.next_segment < segment_count()) {
      segment_pass(p.next_segment, p);
      ++p.next_segment;
      if (on_step && !on_step(p)) break;
    }
    return p.next_segment >= segment_count();
  }

  std::vector<TotalsRow> rows(const TotalsProgress& p) const {
    std::vector<TotalsRow> out;
    u128 phi = 0, lam = 0;
    for (std::size_t b = 0; b < checkpoints_.size(); ++b) {
      phi += p.bucket_phi[b];
      lam += p.bucket_lambda[b];
      out.push_back(make_totals_row(checkpoints_[b], phi, lam));
    }
    return out;
  }

 private:
  struct PrimeExp {
    u32 q;
    std::uint8_t e;
  };
  // exponent of q in phi(m) and lambda(m)
  struct QState {
    u32 q;
    std::uint8_t phi;
    std::uint8_t lam;
  };
  struct Cofactor {
    u32 begin = 0, end = 0;
    u64 tau_phi = 1, tau_lambda = 1;
  };

  static unsigned lambda_exponent_of_two(unsigned e) { return e <= 1 ? 0 : (e == 2 ? 1 : e - 2); }

  std::size_t bucket_of(u64 n) const {
    return static_cast<std::size_t>(std::lower_bound(checkpoints_.begin(), checkpoints_.end(), n) -
                                    checkpoints_.begin());
  }

  void build_shift_factors() {
    shift_begin_.assign(primes_.size() + 1, 0);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      shift_begin_[i] = static_cast<u32>(shift_.size());
      u64 m = primes_[i] - 1;
      while (m > 1) {
        const u64 q = small_.spf(m);
        unsigned e = 0;
        while (m % q == 0) {
          m /= q;
          ++e;
        }
        shift_.push_back({static_cast<u32>(q), static_cast<std::uint8_t>(e)});
      }
    }
    shift_begin_[primes_.size()] = static_cast<u32>(shift_.size());
  }

  // Exponent vectors of phi(m), lambda(m) for every m <= sqrt(x).
  void build_cofactor_states() {
    cofactor_.assign(s_ + 1, {});
    std::vector<QState> acc;
    auto add = [&](u32 q, unsigned phi, unsigned lam) {
      for (auto& st : acc) {
        if (st.q == q) {
          st.phi = static_cast<std::uint8_t>(st.phi + phi);
          st.lam = std::max<std::uint8_t>(st.lam, static_cast<std::uint8_t>(lam));
          return;
        }
      }
      acc.push_back({q, static_cast<std::uint8_t>(phi), static_cast<std::uint8_t>(lam)});
    };
    for (u64 m = 1; m <= s_; ++m) {
      acc.clear();
      u64 r = m;
      while (r > 1) {
        const u64 p = small_.spf(r);
        unsigned e = 0;
        while (r % p == 0) {
          r /= p;
          ++e;
        }
        if (p == 2) {
          if (e > 1) add(2, e - 1, lambda_exponent_of_two(e));
          continue;
        }
        if (e > 1) add(static_cast<u32>(p), e - 1, e - 1);
        u64 t = p - 1;
        while (t > 1) {
          const u64 q = small_.spf(t);
          unsigned f = 0;
          while (t % q == 0) {
            t /= q;
            ++f;
          }
          add(static_cast<u32>(q), f, f);
        }
      }
      std::sort(acc.begin(), acc.end(), [](const QState& a, const QState& b) { return a.q < b.q; });
      Cofactor c;
      c.begin = static_cast<u32>(states_.size());
      for (const auto& st : acc) {
        if (st.phi == 0) continue;
        states_.push_back(st);
        c.tau_phi *= st.phi + 1u;
        c.tau_lambda *= st.lam + 1u;
      }
      c.end = static_cast<u32>(states_.size());
      cofactor_[m] = c;
    }
  }

  // Depth-first walk over sqrt(x)-smooth n with an undo log.
  class SmoothWalker {
   public:
    SmoothWalker(const TotalsEngine& eng, std::vector<u128>& phi, std::vector<u128>& lam)
        : eng_(eng), bucket_phi_(phi), bucket_lam_(lam), ephi_(eng.s_ + 1, 0), elam_(eng.s_ + 1, 0) {}

    void record(u64 n) {
      const std::size_t b = eng_.bucket_of(n);
      bucket_phi_[b] += tau_phi_;
      bucket_lam_[b] += tau_lam_;
      if (tau_lam_ > tau_phi_) throw std::logic_error("tau(lambda(n)) exceeded tau(phi(n))");
    }

    void walk(u64 m, std::size_t from) {
      record(m);
      for (std::size_t j = from; j < eng_.primes_.size() && eng_.primes_[j] <= eng_.x_ / m; ++j) {
        descend(m, j);
      }
    }

    void descend(u64 m, std::size_t j) {
      const u64 p = eng_.primes_[j];
      const std::size_t mark = undo_.size();
      const u64 saved_phi = tau_phi_, saved_lam = tau_lam_;
      if (p != 2) {
        for (u32 k = eng_.shift_begin_[j]; k < eng_.shift_begin_[j + 1]; ++k) {
          bump(eng_.shift_[k].q, eng_.shift_[k].e, eng_.shift_[k].e);
        }
      }
      u64 n = m * p;
      unsigned e = 1;
      while (true) {
        walk(n, j + 1);
        if (n > eng_.x_ / p) break;
        n *= p;
        ++e;
        bump(static_cast<u32>(p), 1, p == 2 ? lambda_exponent_of_two(e) : e - 1);
      }
      while (undo_.size() > mark) {
        const auto& u = undo_.back();
        ephi_[u.q] = u.phi;
        elam_[u.q] = u.lam;
        undo_.pop_back();
      }
      tau_phi_ = saved_phi;
      tau_lam_ = saved_lam;
    }

   private:
    void bump(u32 q, unsigned add_phi, unsigned lam) {
      undo_.push_back({q, ephi_[q], elam_[q]});
      const unsigned old = ephi_[q];
      tau_phi_ = tau_phi_ / (old + 1) * (old + add_phi + 1);
      ephi_[q] = static_cast<std::uint8_t>(old + add_phi);
      if (lam > elam_[q]) {
        tau_lam_ = tau_lam_ / (elam_[q] + 1u) * (lam + 1);
        elam_[q] = static_cast<std::uint8_t>(lam);
      }
    }

    const TotalsEngine& eng_;
    std::vector<u128>& bucket_phi_;
    std::vector<u128>& bucket_lam_;
    std::vector<std::uint8_t> ephi_, elam_;
    std::vector<QState> undo_;
    u64 tau_phi_ = 1, tau_lam_ = 1;
  };

  void smooth_pass(TotalsProgress& p) const {
    const unsigned workers = std::max(1u, opt_.threads);
    std::vector<std::vector<u128>> phi(workers, std::vector<u128>(checkpoints_.size(), 0));
    std::vector<std::vector<u128>> lam = phi;
    parallel_for(workers, workers, [&](std::size_t w) {
      SmoothWalker walker(*this, phi[w], lam[w]);
      if (w == 0) walker.record(1);
      for (std::size_t j = w; j < primes_.size() && primes_[j] <= x_; j += workers) walker.descend(1, j);
    });
    for (unsigned w = 0; w < workers; ++w) {
      for (std::size_t b = 0; b < checkpoints_.size(); ++b) {
        p.bucket_phi[b] += phi[w][b];
        p.bucket_lambda[b] += lam[w][b];
      }
    }
  }

  // Primes P in [lo, hi) with the factorization of P - 1.
  struct SegmentPrimes {
    std::vector<u64> primes;
    std::vector<PrimeExp> factors;  // kSlots per prime
    std::vector<std::uint8_t> count;
    static constexpr unsigned kSlots = 10;  // 2*3*...*29 > 2^32
  };

  SegmentPrimes sieve_segment(u64 lo, u64 hi) const {
    const u64 len = hi - lo;
    std::vector<std::uint8_t> composite(len, 0);
    for (u32 q : primes_) {
      const u64 q64 = q;
      if (q64 * q64 >= hi) break;
      u64 start = std::max(q64 * q64, (lo + q64 - 1) / q64 * q64);
      for (u64 v = start; v < hi; v += q64) composite[v - lo] = 1;
    }
    SegmentPrimes out;
    std::vector<std::int32_t> index(len, -1);
    for (u64 i = 0; i < len; ++i) {
      if (!composite[i]) {
        index[i] = static_cast<std::int32_t>(out.primes.size());
        out.primes.push_back(lo + i);
      }
    }
    const std::size_t np = out.primes.size();
    out.factors.assign(np * SegmentPrimes::kSlots, {});
    out.count.assign(np, 0);
    std::vector<u64> residual(np);
    for (std::size_t k = 0; k < np; ++k) residual[k] = out.primes[k] - 1;
    // P - 1 runs over [lo - 1, hi - 1).
    for (u32 q : primes_) {
      const u64 q64 = q;
      for (u64 v = (lo - 1 + q64 - 1) / q64 * q64; v + 1 < hi; v += q64) {
        const std::int32_t k = index[v + 1 - lo];
        if (k < 0) continue;
        unsigned e = 0;
        u64& r = residual[k];
        while (r % q64 == 0) {
          r /= q64;
          ++e;
        }
        out.factors[k * SegmentPrimes::kSlots + out.count[k]++] = {q, static_cast<std::uint8_t>(e)};
      }
    }
    for (std::size_t k = 0; k < np; ++k) {
      if (residual[k] > 1) {
        out.factors[k * SegmentPrimes::kSlots + out.count[k]++] = {static_cast<u32>(residual[k]), 1};
      }
    }
    return out;
  }

  void segment_pass(u64 segment, TotalsProgress& p) const {
    const u64 lo = s_ + 1 + segment * opt_.segment_size;
    const u64 hi = std::min(lo + opt_.segment_size, x_ + 1);
    const SegmentPrimes seg = sieve_segment(lo, hi);
    if (seg.primes.empty()) return;
    const u64 m_max = x_ / seg.primes.front();
    const unsigned workers = std::max(1u, opt_.threads);
    std::vector<std::vector<u128>> phi(workers, std::vector<u128>(checkpoints_.size(), 0));
    std::vector<std::vector<u128>> lam = phi;
    parallel_for(workers, workers, [&](std::size_t w) {
      for (u64 m = 1 + w; m <= m_max; m += workers) {
        const Cofactor& c = cofactor_[m];
        const u64 p_max = x_ / m;
        std::size_t b = bucket_of(m * seg.primes.front());
        for (std::size_t k = 0; k < seg.primes.size() && seg.primes[k] <= p_max; ++k) {
          const u64 n = m * seg.primes[k];
          while (checkpoints_[b] < n) ++b;
          u64 tau_phi = c.tau_phi, tau_lam = c.tau_lambda;
          u32 st = c.begin;
          const PrimeExp* f = &seg.factors[k * SegmentPrimes::kSlots];
          for (unsigned i = 0; i < seg.count[k]; ++i) {
            while (st < c.end && states_[st].q < f[i].q) ++st;
            unsigned ephi = 0, elam = 0;
            if (st < c.end && states_[st].q == f[i].q) {
              ephi = states_[st].phi;
              elam = states_[st].lam;
            }
            tau_phi = tau_phi / (ephi + 1) * (ephi + f[i].e + 1);
            if (f[i].e > elam) tau_lam = tau_lam / (elam + 1) * (f[i].e + 1u);
          }
          phi[w][b] += tau_phi;
          lam[w][b] += tau_lam;
        }
      }
    });
    for (unsigned w = 0; w < workers; ++w) {
      for (std::size_t b = 0; b < checkpoints_.size(); ++b) {
        p.bucket_phi[b] += phi[w][b];
        p.bucket_lambda[b] += lam[w][b];
      }
    }
  }

  std::vector<u64> checkpoints_;
  TotalsOptions opt_;
  u64 x_ = 0, s_ = 0;
  SpfTable small_;
  std::vector<u32> primes_;
  std::vector<PrimeExp> shift_;
  std::vector<u32> shift_begin_;
  std::vector<QState> states_;
  std::vector<Cofactor> cofactor_;
};

/// One-shot totals at the given checkpoints.
inline std::vector<TotalsRow> totals(std::vector<u64> checkpoints, const TotalsOptions& opt = {}) {
  const TotalsEngine engine(std::move(checkpoints), opt);
  auto progress = engine.fresh();
  engine.run(progress);
  return engine.rows(progress);
}

inline std::vector<TotalsRow> totals(u64 x, const TotalsOptions& opt = {}) {
  return totals(decade_checkpoints(x), opt);
}

}  // namespace tauphi

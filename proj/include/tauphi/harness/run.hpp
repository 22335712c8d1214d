#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <new>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "tauphi/aggregate/classes.hpp"
#include "tauphi/aggregate/partition.hpp"
#include "tauphi/aggregate/totals.hpp"
#include "tauphi/arith/spf_io.hpp"
#include "tauphi/ensemble/aq.hpp"
#include "tauphi/ensemble/monte_carlo.hpp"
#include "tauphi/harness/checkpoint.hpp"
#include "tauphi/harness/config.hpp"
#include "tauphi/harness/constants.hpp"
#include "tauphi/harness/csv.hpp"
#include "tauphi/prime/poisson.hpp"
#include "tauphi/prime/rough_sums.hpp"

namespace tauphi {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitResource = 3,
  kExitCorrupt = 4,
  kExitInterrupted = 130,
};

/// Set from a signal handler; long commands stop at the next segment boundary.
inline std::atomic<bool>& interrupt_requested() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace detail {

inline SpfTable table_through(u64 x, const ExperimentConfig& cfg) {
  SieveOptions opt;
  opt.segment_size = cfg.segment_size;
  opt.threads = cfg.threads;
  return SpfTable::build(2, std::max<u64>(x, 2) + 1, opt);
}

inline std::string join(const std::vector<u64>& vals, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(vals[i]);
  }
  return out;
}

inline unsigned natural_tuple_length(double x) {
  const double lx = std::log(x);
  const double llx = std::log(lx);
  if (!(llx > 0)) return 1;
  const double c = std::numbers::sqrt2 * std::exp(-euler_gamma() / 2);
  return static_cast<unsigned>(std::max(1.0, std::floor(c * std::sqrt(lx / llx))));
}

inline std::optional<std::string> run_totals(const ExperimentConfig& cfg, std::ostream& log) {
  const u64 x = *cfg.x;
  std::vector<u64> at = cfg.at.empty() ? decade_checkpoints(x) : cfg.at;
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  if (at.back() != x) at.push_back(x);
  const TotalsEngine engine(at, {.segment_size = cfg.segment_size, .threads = cfg.threads});
  const u64 hash = config_hash(cfg);
  TotalsProgress progress = engine.fresh();
  const bool checkpointing = !cfg.checkpoint_path.empty();
  if (checkpointing && std::filesystem::exists(cfg.checkpoint_path)) {
    const Checkpoint ck = load_checkpoint(cfg.checkpoint_path, hash);
    progress = decode_totals_progress(ck.payload);
    log << "resuming at segment " << progress.next_segment << " of " << engine.segment_count() << "\n";
  }
  u64 steps = 0;
  const bool done = engine.run(progress, [&](const TotalsProgress& p) {
    if (checkpointing) {
      save_checkpoint(cfg.checkpoint_path,
                      {hash, p.smooth_done ? 1u : 0u, p.next_segment, encode_totals_progress(p)});
    }
    ++steps;
    if (cfg.stop_after_segments && steps >= *cfg.stop_after_segments) return false;
    return !interrupt_requested().load();
  });
  if (!done) {
    log << "stopped at segment " << progress.next_segment << " of " << engine.segment_count() << "\n";
    return std::nullopt;
  }
  if (cfg.series) {
    CsvTable csv({"x", "ratio", "envelope"});
    for (const auto& row : engine.rows(progress)) csv.add({row.x, row.ratio, ratio_envelope(double(row.x))});
    return csv.str();
  }
  CsvTable csv({"x", "sum_tau_phi", "sum_tau_lambda", "ratio", "exponent_phi", "exponent_lambda"});
  for (const auto& row : engine.rows(progress)) {
    csv.add({row.x, row.sum_tau_phi, row.sum_tau_lambda, row.ratio, row.exponent_phi, row.exponent_lambda});
  }
  return csv.str();
}

inline std::string run_rz(const ExperimentConfig& cfg) {
  const auto t = table_through(*cfg.x, cfg);
  const std::vector<u64> moduli = cfg.u.empty() ? std::vector<u64>{1} : cfg.u;
  CsvTable csv({"x", "z", "u", "R", "S"});
  for (u64 u : moduli) {
    const auto s = rough_sums_cong(double(*cfg.x), *cfg.z, u, t);
    csv.add({*cfg.x, *cfg.z, u, s.r, s.s});
  }
  return csv.str();
}

inline std::string run_poisson(const ExperimentConfig& cfg) {
  const double x = double(*cfg.x);
  const double z = cfg.z.value_or(std::log(x));
  const double a = cfg.a.value_or(2.0);
  const unsigned b_max = cfg.B_max.value_or(2);
  const auto t = table_through(*cfg.x, cfg);
  const auto prof = poisson_profile(x, z, a, b_max, t);
  CsvTable csv({"experiment", "x", "z", "a", "B", "value", "predicted", "ratio"});
  double pred_mass = 0;
  for (const auto& e : prof.entries) {
    const double share_r = double(e.r) / double(prof.r_total);
    const double pred_r = e.predicted_r / double(prof.r_total);
    const double share_s = e.s / prof.s_total;
    const double pred_s = e.predicted_s / prof.s_total;
    pred_mass += pred_r;
    csv.add({"R_B_share", *cfg.x, z, a, e.B, share_r, pred_r, share_r / pred_r});
    csv.add({"S_B_share", *cfg.x, z, a, e.B, share_s, pred_s, share_s / pred_s});
  }
  const double tail = double(prof.tail_r) / double(prof.r_total);
  csv.add({"R_tail_share", *cfg.x, z, a, "", tail, 1 - pred_mass, tail / (1 - pred_mass)});
  const auto rr = rough_ratio(x, z, a, t);
  csv.add({"ratio_law", *cfg.x, z, a, "", rr.ratio, rr.predicted, rr.ratio / rr.predicted});
  return csv.str();
}

inline std::string run_simplex(const ExperimentConfig& cfg) {
  const unsigned v = *cfg.v;
  const double r = cfg.r ? *cfg.r : cube_side(v);
  const auto b = covering_bounds(v, r);
  CsvTable csv({"v", "r", "K", "cube_count", "covered_volume", "simplex_volume", "lower_sqrt_shrink",
                "lower_linear_shrink"});
  csv.add({v, r, std::to_string(simplex_budget(v, r)), cube_count(v, r), b.covered_volume, b.simplex_volume,
           b.lower_sqrt_shrink, b.lower_linear_shrink});
  return csv.str();
}

inline std::string run_sfrak(const ExperimentConfig& cfg) {
  const unsigned v = *cfg.v;
  const double x = double(*cfg.x), z = *cfg.z;
  const double r = cfg.r ? *cfg.r : cube_side(v);
  const auto t = table_through(*cfg.x, cfg);
  const auto table = build_slice_table(x, z, r, 1, t);
  const double value = cfg.u.empty() ? s_frak(v, table) : s_frak_cong(x, z, r, cfg.u, t);
  const double s = table.total();
  const double scale = std::pow(s, v) / std::tgamma(v + 1.0);
  CsvTable csv({"x", "z", "r", "v", "u", "s_frak", "s_z", "simplex_scale", "ratio"});
  csv.add({*cfg.x, z, r, v, join(cfg.u.empty() ? std::vector<u64>(v, 1) : cfg.u), value, s, scale, value / scale});
  return csv.str();
}

inline std::string run_mc(const ExperimentConfig& cfg) {
  const unsigned v = *cfg.v;
  const double x = double(*cfg.x), z = *cfg.z;
  const double r = cfg.r ? *cfg.r : cube_side(v);
  const u64 n = *cfg.samples, seed = *cfg.seed;
  const auto t = table_through(*cfg.x, cfg);
  const auto table = build_slice_table(x, z, r, 1, t);
  std::vector<u64> qs = cfg.q;
  if (qs.empty()) {
    for (u64 q : primes_in_window(z, z * z, t)) {
      if (qs.size() < 4) qs.push_back(q);
    }
  }
  const auto samples = sample_tuples(table, v, n, seed, cfg.threads);
  CsvTable csv({"experiment", "v", "z", "x", "r", "samples", "seed", "estimate", "stderr", "reference"});
  auto row = [&](const std::string& name, CsvTable::Cell est, CsvTable::Cell se, CsvTable::Cell ref) {
    csv.add({name, v, z, *cfg.x, r, n, seed, est, se, ref});
  };
  const double scale = std::pow(table.total(), v) / std::tgamma(v + 1.0);
  row("s_frak", samples.front().weight, 0.0, scale);
  row("v_natural", natural_tuple_length(x), "", v);
  const auto rep = restriction_report(samples, z, t);
  row("loss_r1", rep.loss_r1, rep.stderr_r1, "");
  row("loss_r2", rep.loss_r2, rep.stderr_r2, "");
  row("loss_r3", rep.loss_r3, rep.stderr_r3, "");
  row("s0", rep.s0, rep.stderr_s0, rep.total);
  if (rep.wide_interval) row("wide_interval", 1u, "", "");
  const auto us = u_over_s_estimate(samples, z, t);
  row("u_over_s", us.estimate, us.stderr, 1.0);
  const auto hist = xq_histogram(samples, qs, z);
  for (const auto& m : hist.marginals) {
    const std::string q = std::to_string(m.q);
    for (unsigned k = 0; k <= v; ++k) {
      row("P(X_" + q + "=" + std::to_string(k) + ")", m.empirical[k], m.stderr[k], m.reference[k]);
    }
    row("tv_X_" + q, m.tv_distance, "", 0.0);
    // A_q = 2 / 2^{X_q}, or 1 when X_q = 0
    CompensatedSum mean, sq;
    for (unsigned k = 0; k <= v; ++k) {
      const double aq = k == 0 ? 1.0 : 2.0 / std::ldexp(1.0, int(k));
      mean.add(m.empirical[k] * aq);
      sq.add(m.empirical[k] * aq * aq);
    }
    const double var = std::max(0.0, sq.value() - mean.value() * mean.value());
    row("A_" + q, mean.value(), std::sqrt(var / double(n)), aq_expect(unsigned(m.q), v));
  }
  for (const auto& j : hist.joints) {
    row("tv_X_" + std::to_string(j.q1) + "_X_" + std::to_string(j.q2), j.tv_distance, "", 0.0);
  }
  return csv.str();
}

inline std::string run_partition(const ExperimentConfig& cfg) {
  const auto t = table_through(*cfg.x, cfg);
  const auto res = partition_sums(*cfg.x, *cfg.A, t, cfg.threads);
  CsvTable csv({"x", "A", "k", "omega", "class", "count", "sum_tau_lambda", "sum_tau_phi"});
  const char* names[] = {"E1", "E2", "E3"};
  for (int c = 0; c < 3; ++c) {
    csv.add({*cfg.x, *cfg.A, res.params.k, res.params.omega, names[c], res.classes[c].count,
             res.classes[c].sum_tau_lambda, res.classes[c].sum_tau_phi});
  }
  return csv.str();
}

inline std::string run_classes(const ExperimentConfig& cfg) {
  const double x = double(*cfg.x);
  const double z = cfg.z.value_or(std::sqrt(std::log(x)));
  const auto t = table_through(*cfg.x, cfg);
  if (cfg.squarefree) {
    const auto s = squarefree_tau2_sum(x, z, t);
    const double scale = std::sqrt(std::log(x) / std::log(std::log(x)));
    CsvTable csv({"x", "z", "sum_z", "sum_z2", "exponent_z", "exponent_z2"});
    csv.add({*cfg.x, z, s.sum_z, s.sum_z2, std::log(s.sum_z) / scale, std::log(s.sum_z2) / scale});
    return csv.str();
  }
  unsigned v = cfg.v.value_or(0);
  if (v == 0) {
    const double c = cfg.c.value_or(std::numbers::sqrt2 * std::exp(-euler_gamma() / 2));
    v = scaled_class_params(x, c).v;
  }
  const auto sums = class_sums({x, v, z}, t);
  CsvTable csv({"x", "v", "z", "V_M", "W_M", "W_M_prime", "members"});
  csv.add({*cfg.x, v, z, sums.V_M, sums.W_M, sums.W_M_prime, sums.members});
  return csv.str();
}

inline std::string run_lemma41(const ExperimentConfig& cfg) {
  const auto t = table_through(*cfg.x, cfg);
  const auto res = lemma41_ratio(*cfg.x, *cfg.y, t, {.segment_size = cfg.segment_size, .threads = cfg.threads});
  CsvTable csv({"x", "y", "lhs", "rhs_sum", "ratio"});
  csv.add({*cfg.x, *cfg.y, res.lhs, res.rhs_sum, res.ratio});
  return csv.str();
}

inline std::string run_constants() {
  CsvTable csv({"name", "value"});
  for (const auto& c : constants_table()) csv.add({c.name, format_constant(c.value)});
  return csv.str();
}

}  // namespace detail

/// Produces the command's CSV text, or nullopt if a long run stopped early
/// with its checkpoint saved.
inline std::optional<std::string> run_to_string(const ExperimentConfig& cfg, std::ostream& log) {
  validate(cfg);
  switch (cfg.command) {
    case Command::constants:
      return detail::run_constants();
    case Command::sieve: {
      const auto t = detail::table_through(*cfg.x, cfg);
      save_spf_table(t, cfg.out_path);
      CsvTable csv({"lo", "hi", "prime_count"});
      csv.add({t.lo(), t.hi(), u64(t.primes().size())});
      return csv.str();
    }
    case Command::totals:
      return detail::run_totals(cfg, log);
    case Command::rz:
      return detail::run_rz(cfg);
    case Command::poisson:
      return detail::run_poisson(cfg);
    case Command::simplex:
      return detail::run_simplex(cfg);
    case Command::sfrak:
      return detail::run_sfrak(cfg);
    case Command::mc:
      return detail::run_mc(cfg);
    case Command::partition:
      return detail::run_partition(cfg);
    case Command::classes:
      return detail::run_classes(cfg);
    case Command::lemma41:
      return detail::run_lemma41(cfg);
  }
  throw UsageError("command: not handled");
}

/// Runs one experiment: CSV to --out (atomically) or to `out`, diagnostics and
/// wall time to `err`. Returns the process exit code.
inline int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto csv = run_to_string(cfg, err);
    if (!csv) return kExitInterrupted;
    if (cfg.command == Command::sieve || cfg.out_path.empty()) {
      out << *csv;
    } else {
      write_file_atomic(cfg.out_path, *csv);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", secs);
    err << command_name(cfg.command) << " finished in " << buf << " s\n";
    return kExitOk;
  } catch (const DataCorruptionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCorrupt;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace tauphi

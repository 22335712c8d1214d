#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tauphi/errors.hpp"
#include "tauphi/harness/csv.hpp"
#include "tauphi/numeric/bytes.hpp"

namespace tauphi {

/// Invalid or missing command-line / config-file input (exit code 2).
struct UsageError : ParameterError {
  using ParameterError::ParameterError;
};

enum class Command { sieve, totals, rz, poisson, simplex, sfrak, mc, partition, classes, lemma41, constants };

inline constexpr std::array<const char*, 11> kCommandNames = {
    "sieve", "totals", "rz", "poisson", "simplex", "sfrak", "mc", "partition", "classes", "lemma41", "constants"};

inline Command parse_command(const std::string& name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  throw UsageError("command: unknown command '" + name + "'");
}

inline std::string command_name(Command c) { return kCommandNames[static_cast<std::size_t>(c)]; }

struct ExperimentConfig {
  Command command = Command::constants;

  std::optional<std::uint64_t> x;
  std::optional<double> z, a, r, y, A, c;
  std::optional<unsigned> v, B_max;
  std::vector<std::uint64_t> u;
  std::vector<std::uint64_t> q;
  std::vector<std::uint64_t> at;  // totals checkpoints
  std::optional<std::uint64_t> samples, seed;
  unsigned v_cap = 8;
  bool series = false;
  bool squarefree = false;

  // run control: never part of the config hash
  std::string out_path;
  unsigned threads = 1;
  std::uint64_t segment_size = 1 << 18;
  std::string checkpoint_path;
  std::optional<std::uint64_t> stop_after_segments;
};

namespace detail {

template <class T>
void require(const std::optional<T>& field, const char* name, Command c) {
  if (!field) throw UsageError(std::string(name) + ": required by '" + command_name(c) + "'");
}

}  // namespace detail

/// Checks that each command has what it needs, before any compute.
inline void validate(const ExperimentConfig& cfg) {
  using detail::require;
  const Command c = cfg.command;
  if (cfg.threads < 1) throw UsageError("threads: must be >= 1");
  if (cfg.segment_size < 1) throw UsageError("segment-size: must be >= 1");
  switch (c) {
    case Command::constants:
      break;
    case Command::sieve:
      require(cfg.x, "x", c);
      if (cfg.out_path.empty()) throw UsageError("out: sieve writes a binary table and needs --out");
      break;
    case Command::totals:
      require(cfg.x, "x", c);
      for (auto v : cfg.at) {
        if (v < 1 || v > *cfg.x) throw UsageError("at: checkpoints must lie in [1, x]");
      }
      break;
    case Command::rz:
      require(cfg.x, "x", c);
      require(cfg.z, "z", c);
      break;
    case Command::poisson:
      require(cfg.x, "x", c);
      break;
    case Command::simplex:
      require(cfg.v, "v", c);
      break;
    case Command::sfrak:
      require(cfg.x, "x", c);
      require(cfg.z, "z", c);
      require(cfg.v, "v", c);
      if (!cfg.u.empty() && cfg.u.size() != *cfg.v) throw UsageError("u: needs exactly v moduli");
      break;
    case Command::mc:
      require(cfg.x, "x", c);
      require(cfg.z, "z", c);
      require(cfg.v, "v", c);
      require(cfg.samples, "samples", c);
      require(cfg.seed, "seed", c);
      if (*cfg.samples < 1) throw UsageError("samples: must be >= 1");
      if (*cfg.v > cfg.v_cap) {
        throw UsageError("v: " + std::to_string(*cfg.v) + " exceeds the cap of " + std::to_string(cfg.v_cap));
      }
      break;
    case Command::partition:
      require(cfg.x, "x", c);
      require(cfg.A, "A", c);
      break;
    case Command::classes:
      require(cfg.x, "x", c);
      break;
    case Command::lemma41:
      require(cfg.x, "x", c);
      require(cfg.y, "y", c);
      break;
  }
  if (cfg.v && *cfg.v < 1) throw UsageError("v: must be >= 1");
}

/// Hash of everything that determines the output bytes. Thread count, paths and
/// the stop flag are excluded; the segment size is included because checkpoints
/// count segments.
inline std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::string s = "command=" + command_name(cfg.command);
  auto put = [&](const char* key, const std::string& val) { s += std::string(";") + key + "=" + val; };
  auto put_list = [&](const char* key, const std::vector<std::uint64_t>& vals) {
    std::string joined;
    for (auto v : vals) joined += std::to_string(v) + ",";
    put(key, joined);
  };
  if (cfg.x) put("x", std::to_string(*cfg.x));
  for (auto [key, val] : {std::pair{"z", cfg.z}, {"a", cfg.a}, {"r", cfg.r}, {"y", cfg.y}, {"A", cfg.A}, {"c", cfg.c}}) {
    if (val) put(key, format_real(*val));
  }
  if (cfg.v) put("v", std::to_string(*cfg.v));
  if (cfg.B_max) put("B_max", std::to_string(*cfg.B_max));
  if (cfg.samples) put("samples", std::to_string(*cfg.samples));
  if (cfg.seed) put("seed", std::to_string(*cfg.seed));
  put_list("u", cfg.u);
  put_list("q", cfg.q);
  put_list("at", cfg.at);
  put("series", cfg.series ? "1" : "0");
  put("squarefree", cfg.squarefree ? "1" : "0");
  put("segment_size", std::to_string(cfg.segment_size));
  return fnv1a(s);
}

}  // namespace tauphi

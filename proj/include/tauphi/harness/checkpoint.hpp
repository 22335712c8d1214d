#pragma once

#include <filesystem>
#include <string>

#include "tauphi/numeric/bytes.hpp"

namespace tauphi {

// "DVL1" | u32 version | u64 config hash | u64 stage | u64 segment
//        | u64 payload length | payload | u64 FNV-1a of everything before

struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;
  std::uint64_t config_hash = 0;
  std::uint64_t stage = 0;
  std::uint64_t segment = 0;
  std::string payload;

  bool operator==(const Checkpoint&) const = default;
};

inline std::string encode_checkpoint(const Checkpoint& c) {
  std::string out = "DVL1";
  put_le(out, Checkpoint::kVersion, 4);
  put_le(out, c.config_hash, 8);
  put_le(out, c.stage, 8);
  put_le(out, c.segment, 8);
  put_le(out, c.payload.size(), 8);
  out += c.payload;
  put_le(out, fnv1a(out), 8);
  return out;
}

inline Checkpoint decode_checkpoint(std::string_view in) {
  if (in.size() < 48 || in.substr(0, 4) != "DVL1") throw DataCorruptionError("not a DVL1 checkpoint");
  if (get_le(in, 4, 4) != Checkpoint::kVersion) throw DataCorruptionError("unsupported checkpoint version");
  const std::uint64_t len = get_le(in, 32, 8);
  if (len > in.size() || in.size() != 40 + len + 8) throw DataCorruptionError("checkpoint length mismatch");
  if (get_le(in, 40 + len, 8) != fnv1a(in.substr(0, 40 + len))) {
    throw DataCorruptionError("checkpoint checksum mismatch");
  }
  Checkpoint c;
  c.config_hash = get_le(in, 8, 8);
  c.stage = get_le(in, 16, 8);
  c.segment = get_le(in, 24, 8);
  c.payload = std::string(in.substr(40, len));
  return c;
}

inline void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  write_file_atomic(path, encode_checkpoint(c));
}

/// Loads and checks the config hash; a mismatch is refused, never ignored.
inline Checkpoint load_checkpoint(const std::filesystem::path& path, std::uint64_t expected_hash) {
  Checkpoint c = decode_checkpoint(read_file(path));
  if (c.config_hash != expected_hash) {
    throw DataCorruptionError("checkpoint " + path.string() + " was written for a different configuration");
  }
  return c;
}

}  // namespace tauphi

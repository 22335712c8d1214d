#pragma once

#include <filesystem>
#include <string>

#include "tauphi/arith/spf_table.hpp"
#include "tauphi/numeric/bytes.hpp"

namespace tauphi {

// Layout: "SPF1" | lo (u64 LE) | hi (u64 LE) | spf[hi - lo] (u32 LE each).

inline std::string encode_spf_table(const SpfTable& t) {
  std::string out = "SPF1";
  out.reserve(20 + 4 * (t.hi() - t.lo()));
  put_le(out, t.lo(), 8);
  put_le(out, t.hi(), 8);
  for (u32 v : t.raw()) put_le(out, v, 4);
  return out;
}

inline SpfTable decode_spf_table(std::string_view bytes) {
  if (bytes.size() < 20 || bytes.substr(0, 4) != "SPF1") {
    throw DataCorruptionError("not an SPF1 table file");
  }
  const u64 lo = get_le(bytes, 4, 8);
  const u64 hi = get_le(bytes, 12, 8);
  if (lo < 2 || hi <= lo || hi > SpfTable::kMaxHi) {
    throw DataCorruptionError("SPF1 header has an invalid range");
  }
  if (bytes.size() != 20 + 4 * (hi - lo)) {
    throw DataCorruptionError("SPF1 payload length does not match its header");
  }
  std::vector<u32> spf(hi - lo);
  for (u64 i = 0; i < hi - lo; ++i) spf[i] = static_cast<u32>(get_le(bytes, 20 + 4 * i, 4));
  return SpfTable::from_raw(lo, hi, std::move(spf));
}

inline void save_spf_table(const SpfTable& t, const std::filesystem::path& path) {
  write_file_atomic(path, encode_spf_table(t));
}

inline SpfTable load_spf_table(const std::filesystem::path& path) {
  return decode_spf_table(read_file(path));
}

}  // namespace tauphi

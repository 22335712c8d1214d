#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tauphi/numeric/checked.hpp"

namespace tauphi {

/// Floats at 17 significant digits, so every value round-trips.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvTable {
 public:
  struct Cell {
    std::string text;
    Cell(const std::string& s) : text(s) {}
    Cell(const char* s) : text(s) {}
    Cell(double v) : text(format_real(v)) {}
    Cell(u64 v) : text(std::to_string(v)) {}
    Cell(unsigned v) : text(std::to_string(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(u128 v) : text(to_string(v)) {}
  };

  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width does not match header");
    std::vector<std::string> cells;
    for (auto& c : row) cells.push_back(std::move(c.text));
    rows_.push_back(std::move(cells));
  }

  std::size_t size() const { return rows_.size(); }

  std::string str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += quote(cells[i]);
      }
      out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace tauphi

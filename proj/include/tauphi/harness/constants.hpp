#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace tauphi {

struct NamedConstant {
  std::string name;
  double value;
};

inline double euler_gamma() { return std::numbers::egamma; }
inline double b1_old() { return std::exp(-euler_gamma() / 2) / 7; }
inline double b1_new() { return 2 * std::exp(-euler_gamma() / 2); }
inline double b2() { return 2 * std::numbers::sqrt2 * std::exp(-euler_gamma() / 2); }

inline std::vector<NamedConstant> constants_table() {
  const double g = euler_gamma();
  return {
      {"gamma", g},
      {"c1 = exp(-gamma)", std::exp(-g)},
      {"exp(-gamma/2)", std::exp(-g / 2)},
      {"b1_old = exp(-gamma/2)/7", b1_old()},
      {"b1_new = 2 exp(-gamma/2)", b1_new()},
      {"b2 = 2 sqrt(2) exp(-gamma/2)", b2()},
  };
}

/// 15 significant digits, as printed by the constants command.
inline std::string format_constant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace tauphi

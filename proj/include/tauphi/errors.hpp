#pragma once

#include <stdexcept>
#include <string>

namespace tauphi {

// Each error category maps to one CLI exit code (see harness/run.hpp).

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct DataCorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tauphi

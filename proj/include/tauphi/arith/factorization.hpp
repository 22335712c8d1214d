#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>

#include "tauphi/errors.hpp"
#include "tauphi/numeric/checked.hpp"

namespace tauphi {

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer n, primes strictly increasing.
///
/// Storage is inline: a 64-bit integer has at most 15 distinct prime factors
/// (2*3*...*47 < 2^64 < 2*3*...*53), so no allocation happens in hot loops.
class Factorization {
 public:
  static constexpr std::size_t kMaxPrimes = 15;

  Factorization() = default;

  /// Validates the invariants; throws ParameterError when they fail.
  static Factorization of(std::initializer_list<PrimePower> factors) {
    Factorization f;
    for (const auto& pp : factors) f.append(pp.prime, pp.exponent);
    return f;
  }

  /// Appends p^e; p must exceed every prime already present.
  void append(u64 prime, unsigned exponent) {
    if (prime < 2 || exponent == 0) {
      throw ParameterError("factorization entries need prime >= 2 and exponent >= 1");
    }
    if (size_ > 0 && factors_[size_ - 1].prime >= prime) {
      throw ParameterError("factorization primes must be strictly increasing");
    }
    if (size_ == kMaxPrimes) throw OverflowError("too many distinct primes for 64 bits");
    n_ = checked_mul(n_, checked_pow(prime, exponent), "factored value");
    factors_[size_++] = {prime, exponent};
  }

  u64 n() const { return n_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const PrimePower> factors() const { return {factors_.data(), size_}; }
  const PrimePower& operator[](std::size_t i) const { return factors_[i]; }

  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.begin() + static_cast<std::ptrdiff_t>(size_); }

  friend bool operator==(const Factorization& a, const Factorization& b) {
    if (a.n_ != b.n_ || a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i) {
      if (!(a.factors_[i] == b.factors_[i])) return false;
    }
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const Factorization& f) {
    os << f.n_ << " = [";
    for (std::size_t i = 0; i < f.size_; ++i) {
      os << (i ? "," : "") << "(" << f.factors_[i].prime << "," << f.factors_[i].exponent << ")";
    }
    return os << "]";
  }

 private:
  u64 n_ = 1;
  std::size_t size_ = 0;
  std::array<PrimePower, kMaxPrimes> factors_{};
};

}  // namespace tauphi

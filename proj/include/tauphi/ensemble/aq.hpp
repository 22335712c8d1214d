#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "tauphi/errors.hpp"

namespace tauphi {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational_pow(const Rational& base, unsigned k) {
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), k),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), k));
}

/// 2 (1 - 1/q)^v - (1 - 2/q)^v in floating point.
inline double aq_expect(unsigned q, unsigned v) {
  if (q < 3 || v < 1) throw ParameterError("aq_expect needs q >= 3 and v >= 1");
  const double dq = q;
  return 2.0 * std::pow(1.0 - 1.0 / dq, v) - std::pow(1.0 - 2.0 / dq, v);
}

/// The same closed form evaluated exactly.
inline Rational aq_expect_rational(unsigned q, unsigned v) {
  if (q < 3 || v < 1) throw ParameterError("aq_expect needs q >= 3 and v >= 1");
  const Rational one = 1;
  const Rational a = one - Rational(1, q);
  const Rational b = one - Rational(2, q);
  return 2 * rational_pow(a, v) - rational_pow(b, v);
}

/// E[A_q] with X_q ~ binomial(v, 2/q), A_q = 1 at X_q = 0 and 2/2^k at X_q = k,
/// summed term by term in exact rational arithmetic.
inline Rational aq_expect_binomial(unsigned q, unsigned v) {
  if (q < 3 || v < 1) throw ParameterError("aq_expect needs q >= 3 and v >= 1");
  const Rational p(2, q);
  const Rational one = 1;
  Rational total = 0;
  BigInt choose = 1;  // C(v, k)
  for (unsigned k = 0; k <= v; ++k) {
    const Rational a_k = k == 0 ? one : Rational(2, BigInt(1) << k);
    total += Rational(choose) * rational_pow(p, k) *
             rational_pow(Rational(one - p), v - k) * a_k;
    choose = choose * (v - k) / (k + 1);
  }
  return total;
}

}  // namespace tauphi

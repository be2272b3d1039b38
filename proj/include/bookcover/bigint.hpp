#pragma once

#include <cmath>
#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

#include "bookcover/errors.hpp"

namespace bookcover {

// All torsion orders, bounds and intermediate SNF entries are exact integers.
// No floating point participates in any verdict; doubles appear only in
// display fields.
using Int = boost::multiprecision::cpp_int;

inline Int ipow(Int base, std::uint64_t exp) {
  Int result = 1;
  while (exp != 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp != 0) base *= base;
  }
  return result;
}

// floor(sqrt(x)) for x >= 0.
inline Int isqrt_floor(const Int& x) {
  if (x < 0) throw InternalError("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(x);
}

inline Int big_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int big_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int big_abs(const Int& a) { return boost::multiprecision::abs(a); }

// Natural log of a positive big integer, for display columns only.
inline double log_big(const Int& x) {
  if (x <= 0) throw InternalError("log_big: non-positive argument");
  const std::size_t bits = boost::multiprecision::msb(x);
  if (bits <= 900) return std::log(x.convert_to<double>());
  const Int mantissa = x >> (bits - 52);
  return std::log(mantissa.convert_to<double>()) +
         static_cast<double>(bits - 52) * std::log(2.0);
}

}  // namespace bookcover

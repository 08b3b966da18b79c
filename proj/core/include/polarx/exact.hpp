#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace polarx {

/// Arbitrary-precision signed integer. Every closed-formula value in the
/// toolkit is an ExactInt; there is no floating point anywhere in the
/// arithmetic layers.
using ExactInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const ExactInt& v) { return v.str(); }

/// q^e as an exact integer (e >= 0).
inline ExactInt exact_pow(std::int64_t base, std::int64_t exp) {
  ExactInt r = 1;
  ExactInt b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

}  // namespace polarx

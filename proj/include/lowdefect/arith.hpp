#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lowdefect/errors.hpp"

namespace lowdefect {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigint_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  std::uint64_t e = exponent;
  while (e != 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline BigInt pow3(std::uint64_t exponent) { return bigint_pow(BigInt(3), exponent); }

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(Error::Kind::Range, "label product overflows 64 bits");
  return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(Error::Kind::Range, "sum overflows 64 bits");
  return r;
}

// 3^k as u64; throws when it does not fit.
inline std::uint64_t pow3_u64(std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, 3);
  return r;
}

// Splits n = 3^a * u with u not divisible by 3; returns a and sets u.
inline unsigned split_power_of_3(std::uint64_t n, std::uint64_t& u) {
  unsigned a = 0;
  while (n % 3 == 0) {
    n /= 3;
    ++a;
  }
  u = n;
  return a;
}

inline bool fits_uint64(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_uint64(const BigInt& v) {
  if (!fits_uint64(v))
    throw Error(Error::Kind::Range, "value does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

}  // namespace lowdefect

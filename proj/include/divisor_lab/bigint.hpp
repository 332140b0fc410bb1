#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace divlab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a) / big_gcd(a, b) * boost::multiprecision::abs(b);
}

/// `divisor | value` in the integer sense: 0 divides only 0.
inline bool divides(const BigInt& divisor, const BigInt& value) {
  if (divisor == 0) return value == 0;
  return value % divisor == 0;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace divlab

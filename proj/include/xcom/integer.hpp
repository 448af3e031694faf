#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace xcom {

using Integer = boost::multiprecision::cpp_int;

// Remainder with the sign of the divisor, so `n mod 2` is 0 or 1 for every n.
// Caller guarantees divisor != 0.
inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

inline std::string to_string(const Integer& n) { return n.str(); }

}  // namespace xcom

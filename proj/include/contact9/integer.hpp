#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace contact9 {

/// Arbitrary-precision integer used for every exact coefficient.
using Integer = boost::multiprecision::cpp_int;

/// Least non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer pow2(unsigned j) {
  Integer r = 1;
  r <<= j;
  return r;
}

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace contact9

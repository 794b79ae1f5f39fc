#pragma once

// Independent high-precision references for the tests: MPFR through
// Boost.Multiprecision and Boost's own cpp_int. Nothing here touches the
// machin evaluation paths.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <ios>
#include <string>

#include "machin/bignum.hpp"

namespace oracle {

using Real = boost::multiprecision::mpfr_float;
using Int = boost::multiprecision::cpp_int;

/// Sets the working precision to `places` + 30 decimal digits.
inline void set_places(std::size_t places) { Real::default_precision(static_cast<unsigned>(places + 30)); }

/// v truncated to `places` decimal places as a FixedReal.
inline machin::FixedReal to_fixed(const Real& v, std::size_t places) {
  const std::string s = v.str(static_cast<std::streamsize>(places + 8), std::ios::fixed);
  return machin::truncate_places(machin::FixedReal::parse(s), places);
}

inline Real pi() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

inline Real from_rational(const machin::BigRational& q) {
  return Real(q.num().to_string()) / Real(q.den().to_string());
}

inline Int to_int(const machin::BigInt& v) { return Int(v.to_string()); }

/// Euclid on cpp_int.
inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace oracle

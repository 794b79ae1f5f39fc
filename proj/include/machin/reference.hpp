#pragma once

// Reference values of pi that do not depend on any arctangent code.

#include <cstddef>
#include <string_view>

#include "machin/bignum.hpp"

namespace machin {

/// First 100 decimal places of pi. Cross-checked in the test suite against
/// two generated formulas (k = 3 and k = 6) and the Gauss-Legendre iteration.
inline constexpr std::string_view kPi100 =
    "3."
    "1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

inline constexpr std::size_t kEmbeddedPiPlaces = 100;

/// Embedded pi truncated to `places` (at most 100) decimal places.
inline FixedReal embedded_pi(std::size_t places) {
  if (places > kEmbeddedPiPlaces) throw DomainError("embedded pi reference holds only 100 places");
  return truncate_places(FixedReal::parse(kPi100), places);
}

/// pi to `digits` places by the Gauss-Legendre (AGM) iteration.
inline FixedReal pi_gauss_legendre(std::size_t digits) {
  const std::size_t work = digits + kGuardDigits;
  const FixedReal one = FixedReal::from_integer(1, work);
  const BigRational half(BigInt(1), BigInt(2));
  FixedReal a = one;
  FixedReal b = fixed_sqrt(one.scaled(half), work);
  FixedReal t = one.scaled(BigRational(BigInt(1), BigInt(4)));
  BigInt p = 1;
  const FixedReal tolerance(BigInt(1), work);
  while ((a - b).abs() > tolerance) {
    const FixedReal next_a = (a + b).scaled(half);
    b = fixed_sqrt(FixedReal::mul(a, b, work), work);
    const FixedReal d = a - next_a;
    t = t - FixedReal::mul(d, d, work).scaled(BigRational(p));
    p *= BigInt(2);
    a = next_a;
  }
  const FixedReal s = a + b;
  const FixedReal pi = FixedReal::div(FixedReal::mul(s, s, work), t.scaled(BigRational(4)), work);
  return FixedReal(pi.mantissa(), work, digits);
}

}  // namespace machin

#pragma once

// Exact integers and rationals (GMP underneath) and a decimal fixed-point
// real used for every approximate quantity in the library.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "machin/error.hpp"

namespace machin {

/// Extra decimal places carried beyond the requested accuracy.
inline constexpr std::size_t kGuardDigits = 10;

class BigInt {
 public:
  BigInt() = default;

  template <std::signed_integral T>
  BigInt(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral T>
  BigInt(T v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  explicit BigInt(mpz_class v) : value_(std::move(v)) {}

  /// Parses an optionally signed run of decimal digits.
  static BigInt from_string(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      digits.remove_prefix(1);
    }
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw DomainError("not a decimal integer: '" + std::string(text) + "'");
    }
    mpz_class v;
    v.set_str(std::string(digits), 10);
    if (text.front() == '-') v = -v;
    return BigInt(std::move(v));
  }

  static BigInt pow10(std::size_t exponent) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 10, exponent);
    return BigInt(std::move(v));
  }

  static BigInt pow2(std::size_t exponent) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, exponent);
    return BigInt(std::move(v));
  }

  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] BigInt abs() const { return BigInt(mpz_class(::abs(value_))); }

  /// Number of decimal digits of |*this|; zero has one digit.
  [[nodiscard]] std::size_t digit_count() const {
    if (is_zero()) return 1;
    // mpz_sizeinbase may overshoot by one for base 10.
    std::size_t n = mpz_sizeinbase(value_.get_mpz_t(), 10);
    if (mpz_cmpabs(value_.get_mpz_t(), pow10(n - 1).value_.get_mpz_t()) < 0) --n;
    return n;
  }

  /// log10|*this|, finite for nonzero values of any size.
  [[nodiscard]] double log10_abs() const {
    if (is_zero()) throw DomainError("log10 of zero");
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, value_.get_mpz_t());
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
  }

  [[nodiscard]] bool fits_long() const { return value_.fits_slong_p(); }
  [[nodiscard]] long to_long() const {
    if (!fits_long()) throw DomainError("integer does not fit in a long");
    return value_.get_si();
  }

  [[nodiscard]] std::string to_string() const { return value_.get_str(10); }
  [[nodiscard]] const mpz_class& raw() const { return value_; }

  BigInt operator-() const { return BigInt(mpz_class(-value_)); }

  BigInt& operator+=(const BigInt& o) { value_ += o.value_; return *this; }
  BigInt& operator-=(const BigInt& o) { value_ -= o.value_; return *this; }
  BigInt& operator*=(const BigInt& o) { value_ *= o.value_; return *this; }
  /// Truncating division (rounds toward zero).
  BigInt& operator/=(const BigInt& o) {
    if (o.is_zero()) throw DivisionByZero();
    value_ /= o.value_;
    return *this;
  }
  BigInt& operator%=(const BigInt& o) {
    if (o.is_zero()) throw DivisionByZero();
    value_ %= o.value_;
    return *this;
  }

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

 private:
  mpz_class value_;
};

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(g));
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
  mpz_class v;
  mpz_pow_ui(v.get_mpz_t(), base.raw().get_mpz_t(), exponent);
  return BigInt(std::move(v));
}

/// floor(sqrt(n)); r satisfies r^2 <= n < (r+1)^2.
inline BigInt isqrt(const BigInt& n) {
  if (n.sign() < 0) throw DomainError("isqrt of a negative integer");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.raw().get_mpz_t());
  return BigInt(std::move(r));
}

/// Exact rational, always reduced with a positive denominator.
class BigRational {
 public:
  BigRational() = default;

  template <std::integral T>
  BigRational(T v) : value_(BigInt(v).raw()) {}  // NOLINT(google-explicit-constructor)

  BigRational(const BigInt& v) : value_(v.raw()) {}  // NOLINT(google-explicit-constructor)

  BigRational(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) throw DivisionByZero("rational with zero denominator");
    value_ = mpq_class(num.raw(), den.raw());
    value_.canonicalize();
  }

  /// Accepts "n" or "n/d".
  static BigRational from_string(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRational(BigInt::from_string(text));
    return BigRational(BigInt::from_string(text.substr(0, slash)),
                       BigInt::from_string(text.substr(slash + 1)));
  }

  [[nodiscard]] BigInt num() const { return BigInt(value_.get_num()); }
  [[nodiscard]] BigInt den() const { return BigInt(value_.get_den()); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] BigRational abs() const { return sign() < 0 ? -*this : *this; }

  [[nodiscard]] BigRational reciprocal() const {
    if (is_zero()) throw DivisionByZero("reciprocal of zero");
    BigRational r;
    mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
    return r;
  }

  /// log10|*this| for nonzero values of any size.
  [[nodiscard]] double log10_abs() const { return num().log10_abs() - den().log10_abs(); }

  [[nodiscard]] std::string to_string() const {
    return value_.get_den() == 1 ? value_.get_num().get_str(10) : value_.get_str(10);
  }

  BigRational operator-() const {
    BigRational r;
    r.value_ = -value_;
    return r;
  }

  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) throw DivisionByZero();
    value_ /= o.value_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& v) { return os << v.to_string(); }

 private:
  mpq_class value_;
};

enum class RoundingMode { truncate, half_away };

/// Decimal fixed-point real: value = mantissa / 10^scale.
///
/// `precision` is the number of decimal places the producer vouches for; it
/// never exceeds `scale`, the places actually stored. Arithmetic truncates
/// toward zero, so negation commutes with every operation.
class FixedReal {
 public:
  FixedReal() = default;

  FixedReal(BigInt mantissa, std::size_t scale)
      : mantissa_(std::move(mantissa)), scale_(scale), precision_(scale) {}

  FixedReal(BigInt mantissa, std::size_t scale, std::size_t precision)
      : mantissa_(std::move(mantissa)), scale_(scale), precision_(std::min(precision, scale)) {}

  static FixedReal from_integer(const BigInt& v, std::size_t scale) {
    return FixedReal(v * BigInt::pow10(scale), scale);
  }

  /// q truncated toward zero to `scale` places.
  static FixedReal from_rational(const BigRational& q, std::size_t scale) {
    return FixedReal(q.num() * BigInt::pow10(scale) / q.den(), scale);
  }

  /// Exact parse of "[-]digits[.digits]"; scale is the number of digits after the point.
  static FixedReal parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string digits(body.substr(0, dot));
    std::size_t scale = 0;
    if (dot != std::string_view::npos) {
      const auto frac = body.substr(dot + 1);
      digits += frac;
      scale = frac.size();
    }
    BigInt m = BigInt::from_string(digits);
    return FixedReal(negative ? -m : m, scale);
  }

  [[nodiscard]] const BigInt& mantissa() const { return mantissa_; }
  [[nodiscard]] std::size_t scale() const { return scale_; }
  [[nodiscard]] std::size_t precision() const { return precision_; }
  [[nodiscard]] int sign() const { return mantissa_.sign(); }
  [[nodiscard]] bool is_zero() const { return mantissa_.is_zero(); }

  [[nodiscard]] FixedReal with_precision(std::size_t precision) const {
    return FixedReal(mantissa_, scale_, precision);
  }

  /// Re-expressed with `scale` places, truncating when places are dropped.
  [[nodiscard]] FixedReal rescaled(std::size_t scale) const {
    if (scale >= scale_) {
      return FixedReal(mantissa_ * BigInt::pow10(scale - scale_), scale, precision_);
    }
    return FixedReal(mantissa_ / BigInt::pow10(scale_ - scale), scale, std::min(precision_, scale));
  }

  /// Multiplication by an exact rational, truncated at the current scale.
  [[nodiscard]] FixedReal scaled(const BigRational& q) const {
    return FixedReal(mantissa_ * q.num() / q.den(), scale_, precision_);
  }

  /// Integer part, truncated toward zero.
  [[nodiscard]] BigInt integer_part() const { return mantissa_ / BigInt::pow10(scale_); }

  [[nodiscard]] BigRational to_rational() const { return BigRational(mantissa_, BigInt::pow10(scale_)); }

  [[nodiscard]] double to_double() const {
    if (is_zero()) return 0.0;
    return std::copysign(std::pow(10.0, mantissa_.log10_abs() - static_cast<double>(scale_)),
                         static_cast<double>(sign()));
  }

  /// All stored places, e.g. "-0.014435".
  [[nodiscard]] std::string to_string() const {
    std::string digits = mantissa_.abs().to_string();
    if (digits.size() <= scale_) digits.insert(0, scale_ - digits.size() + 1, '0');
    if (scale_ > 0) digits.insert(digits.size() - scale_, 1, '.');
    return (sign() < 0 ? "-" : "") + digits;
  }

  FixedReal operator-() const { return FixedReal(-mantissa_, scale_, precision_); }
  [[nodiscard]] FixedReal abs() const { return sign() < 0 ? -*this : *this; }

  friend FixedReal operator+(const FixedReal& a, const FixedReal& b) {
    const std::size_t s = std::max(a.scale_, b.scale_);
    return FixedReal(a.rescaled(s).mantissa_ + b.rescaled(s).mantissa_, s,
                     std::min(a.precision_, b.precision_));
  }
  friend FixedReal operator-(const FixedReal& a, const FixedReal& b) { return a + (-b); }

  /// Product truncated to `scale` places.
  static FixedReal mul(const FixedReal& a, const FixedReal& b, std::size_t scale) {
    const std::size_t s = a.scale_ + b.scale_;
    BigInt m = a.mantissa_ * b.mantissa_;
    m = s >= scale ? m / BigInt::pow10(s - scale) : m * BigInt::pow10(scale - s);
    return FixedReal(std::move(m), scale, std::min({a.precision_, b.precision_, scale}));
  }

  /// Quotient truncated to `scale` places.
  static FixedReal div(const FixedReal& a, const FixedReal& b, std::size_t scale) {
    if (b.is_zero()) throw DivisionByZero();
    // a.m * 10^(b.s + scale - a.s) / b.m
    BigInt num = a.mantissa_;
    BigInt den = b.mantissa_;
    const std::size_t up = b.scale_ + scale;
    if (up >= a.scale_) {
      num *= BigInt::pow10(up - a.scale_);
    } else {
      den *= BigInt::pow10(a.scale_ - up);
    }
    return FixedReal(num / den, scale, std::min({a.precision_, b.precision_, scale}));
  }

  friend FixedReal operator*(const FixedReal& a, const FixedReal& b) {
    return mul(a, b, std::max(a.scale_, b.scale_));
  }
  friend FixedReal operator/(const FixedReal& a, const FixedReal& b) {
    return div(a, b, std::max(a.scale_, b.scale_));
  }

  /// Numeric comparison; scale and precision do not participate.
  friend std::strong_ordering operator<=>(const FixedReal& a, const FixedReal& b) {
    const std::size_t s = std::max(a.scale_, b.scale_);
    return a.rescaled(s).mantissa_ <=> b.rescaled(s).mantissa_;
  }
  friend bool operator==(const FixedReal& a, const FixedReal& b) { return (a <=> b) == 0; }

  friend std::ostream& operator<<(std::ostream& os, const FixedReal& v) { return os << v.to_string(); }

 private:
  BigInt mantissa_;
  std::size_t scale_ = 0;
  std::size_t precision_ = 0;
};

/// Drops every place past `places`, toward zero (the 3.14159 / -0.014435 style cut).
inline FixedReal truncate_places(const FixedReal& x, std::size_t places) {
  if (places >= x.scale()) return x.with_precision(std::min(x.precision(), places));
  return x.rescaled(places);
}

/// Keeps `digits` significant decimal digits; precision is set to `digits`.
inline FixedReal round_to_digits(const FixedReal& x, std::size_t digits,
                                 RoundingMode mode = RoundingMode::truncate) {
  if (digits == 0) throw DomainError("round_to_digits needs at least one digit");
  if (x.is_zero()) return FixedReal(BigInt(0), x.scale(), digits);
  const std::size_t len = x.mantissa().digit_count();
  if (len <= digits) return FixedReal(x.mantissa(), x.scale(), digits);
  const std::size_t drop = len - digits;
  const BigInt unit = BigInt::pow10(drop);
  BigInt kept = x.mantissa() / unit;
  if (mode == RoundingMode::half_away) {
    const BigInt rest = (x.mantissa() % unit).abs();
    if (rest * BigInt(2) >= unit) kept += BigInt(x.sign());
  }
  if (drop <= x.scale()) return FixedReal(std::move(kept), x.scale() - drop, digits);
  // Rounding reaches left of the decimal point; keep scale 0.
  return FixedReal(kept * BigInt::pow10(drop - x.scale()), 0, digits);
}

/// sqrt(x) truncated to `digits` places, from isqrt of the mantissa rescaled
/// to 2*(digits + guard) places.
inline FixedReal fixed_sqrt(const FixedReal& x, std::size_t digits) {
  if (x.sign() < 0) throw DomainError("square root of a negative value");
  if (digits == 0) throw DomainError("fixed_sqrt needs at least one digit");
  const std::size_t work = digits + kGuardDigits;
  const FixedReal wide = x.rescaled(2 * work);
  const FixedReal root(isqrt(wide.mantissa()), work);
  return FixedReal(root.rescaled(digits).mantissa(), digits, digits);
}

/// Largest d with |err| < 10^-d, judged at err's own scale (zero gives the scale).
inline std::size_t decimal_accuracy(const FixedReal& err) {
  if (err.is_zero()) return err.scale();
  const std::size_t len = err.mantissa().digit_count();
  return len >= err.scale() ? 0 : err.scale() - len;
}

/// Decimal places on which the written expansions of a and b agree, after
/// cutting both to their common scale. Returns -1 when sign or integer part
/// already differ.
inline long agreeing_places(const FixedReal& a, const FixedReal& b) {
  const std::size_t s = std::min(a.scale(), b.scale());
  const FixedReal ta = a.rescaled(s);
  const FixedReal tb = b.rescaled(s);
  if (!ta.is_zero() && !tb.is_zero() && ta.sign() != tb.sign()) return -1;
  if (ta.integer_part().abs() != tb.integer_part().abs()) return -1;
  const std::string da = ta.abs().to_string();
  const std::string db = tb.abs().to_string();
  const auto dot = da.find('.');
  if (dot == std::string::npos) return 0;
  long n = 0;
  for (std::size_t i = dot + 1; i < da.size() && i < db.size() && da[i] == db[i]; ++i) ++n;
  return n;
}

}  // namespace machin

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "machin/bignum.hpp"

namespace machin {

/// Complex number with exact rational parts. BigRational keeps both parts
/// reduced, so repeated squaring of unit-modulus values stays as small as the
/// numbers allow.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(BigRational re, BigRational im = BigRational()) // NOLINT(google-explicit-constructor)
      : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {BigRational(0), BigRational(1)}; }

  [[nodiscard]] const BigRational& re() const { return re_; }
  [[nodiscard]] const BigRational& im() const { return im_; }
  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  /// re^2 + im^2, exact.
  [[nodiscard]] BigRational norm() const { return re_ * re_ + im_ * im_; }

  [[nodiscard]] std::string to_string() const {
    return "(" + re_.to_string() + (im_.sign() < 0 ? ")-(" : ")+(") + im_.abs().to_string() + ")i";
  }

  GaussianRational operator-() const { return {-re_, -im_}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  /// a / b = a * conj(b) / |b|^2.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw DivisionByZero("complex division by zero");
    const BigRational n = b.norm();
    const GaussianRational p = a * b.conj();
    return {p.re_ / n, p.im_ / n};
  }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

 private:
  BigRational re_;
  BigRational im_;
};

inline GaussianRational gmul(const GaussianRational& a, const GaussianRational& b) { return a * b; }
inline GaussianRational gdiv(const GaussianRational& a, const GaussianRational& b) { return a / b; }

/// a^e by square-and-multiply. For e = 2^j this is j squarings.
inline GaussianRational gpow(GaussianRational base, std::uint64_t e) {
  GaussianRational result(BigRational(1));
  bool have = false;
  while (e != 0) {
    if ((e & 1U) != 0) {
      result = have ? result * base : base;
      have = true;
    }
    e >>= 1U;
    if (e != 0) {
      // Squaring as (re^2 - im^2) + 2 re im i saves one product.
      const BigRational& r = base.re();
      const BigRational& m = base.im();
      base = GaussianRational((r - m) * (r + m), BigRational(2) * r * m);
    }
  }
  return result;
}

}  // namespace machin

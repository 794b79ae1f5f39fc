#pragma once

// Two-term Machin-like formulas
//
//   pi/4 = 2^(k-1) arctan(1/beta1) + arctan(1/beta2),
//
// with beta1 = floor(c_k / sqrt(2 - c_{k-1})) from the nested radicals
// c_1 = sqrt(2), c_{j+1} = sqrt(2 + c_j), and beta2 forced exactly by
//
//   beta2 = 2 / ([(beta1 + i)/(beta1 - i)]^(2^(k-1)) - i) - i.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "machin/arctan.hpp"
#include "machin/bignum.hpp"
#include "machin/gaussian.hpp"
#include "machin/reference.hpp"

namespace machin {

inline constexpr int kDefaultMaxK = 16;

struct RadicalPair {
  FixedReal c_prev;   // c_{k-1}
  FixedReal c_k;
  FixedReal gamma;    // c_k / sqrt(2 - c_{k-1}) = cot(pi / 2^(k+1))
  FixedReal epsilon;  // floor(gamma) - gamma, in (-1, 0]
};

/// c_{k-1}, c_k and gamma to `digits` decimal places.
///
/// 2 - c_{k-1} is about (pi/2^k)^2, so roughly 0.6k digits cancel in the
/// subtraction and gamma carries 0.3k integer digits; k extra places cover both.
inline RadicalPair nested_radical(int k, std::size_t digits) {
  if (k < 2) throw DomainError("nested_radical needs k >= 2, got " + std::to_string(k));
  if (digits == 0) throw DomainError("nested_radical needs at least one digit");
  const std::size_t work = digits + kGuardDigits + static_cast<std::size_t>(k);
  const FixedReal two = FixedReal::from_integer(2, work);
  FixedReal prev = fixed_sqrt(two, work);  // c_1
  FixedReal cur = prev;
  for (int j = 2; j <= k; ++j) {
    prev = cur;
    cur = fixed_sqrt(two + cur, work);
  }
  const FixedReal denom = fixed_sqrt(two - prev, work);
  const FixedReal gamma = FixedReal::div(cur, denom, work);
  const FixedReal floor_gamma = FixedReal::from_integer(gamma.integer_part(), work);
  return {truncate_places(prev, digits).with_precision(digits), truncate_places(cur, digits).with_precision(digits),
          truncate_places(gamma, digits).with_precision(digits),
          truncate_places(floor_gamma - gamma, digits).with_precision(digits)};
}

/// floor(gamma). Starts at 30 places and doubles while the fractional part
/// sits within 1e-10 of an integer, so the floor is never decided by rounding.
inline BigInt select_beta1(int k) {
  if (k < 2) throw DomainError("select_beta1 needs k >= 2, got " + std::to_string(k));
  const FixedReal margin(BigInt(1), 10);
  for (std::size_t digits = 30; digits <= 30U << 8U; digits *= 2) {
    const FixedReal gamma = nested_radical(k, digits).gamma;
    const FixedReal frac = gamma - FixedReal::from_integer(gamma.integer_part(), gamma.scale());
    const FixedReal one = FixedReal::from_integer(1, gamma.scale());
    if (frac > margin && one - frac > margin) return gamma.integer_part();
  }
  throw Error("could not certify floor of gamma for k=" + std::to_string(k));
}

/// Exact beta2 for a given beta1 and k. Throws if the imaginary part of the
/// Gaussian expression does not vanish.
inline BigRational compute_beta2(const BigRational& beta1, int k) {
  if (beta1.sign() <= 0) throw DomainError("compute_beta2 needs beta1 > 0");
  if (k < 2 || k > 63) throw DomainError("compute_beta2 needs 2 <= k <= 63, got " + std::to_string(k));
  const GaussianRational i = GaussianRational::i();
  const GaussianRational b(beta1);
  const GaussianRational ratio = gdiv(b + i, b - i);
  const GaussianRational z = gpow(ratio, std::uint64_t{1} << static_cast<unsigned>(k - 1));
  const GaussianRational shifted = z - i;
  if (shifted.is_zero()) throw DivisionByZero("beta2 is undefined: (beta1+i)/(beta1-i)^alpha1 equals i");
  const GaussianRational result = gdiv(GaussianRational(BigRational(2)), shifted) - i;
  if (!result.im().is_zero()) {
    throw Error("beta2 has a nonzero imaginary part: " + result.im().to_string());
  }
  if (result.re().is_zero()) throw DivisionByZero("beta2 is zero");
  return result.re();
}

struct MachinFormula {
  int k = 2;
  BigInt alpha1;  // 2^(k-1)
  BigInt beta1;
  BigRational beta2;

  [[nodiscard]] static int alpha2() { return 1; }
  /// 1/beta2, the argument of the second arctangent.
  [[nodiscard]] BigRational arctan_argument() const { return beta2.reciprocal(); }

  friend bool operator==(const MachinFormula&, const MachinFormula&) = default;
};

/// alpha1 arctan(1/beta1) + arctan(1/beta2) at `digits` places (scale
/// digits + guard). The two series run concurrently.
inline FixedReal machin_sum(const MachinFormula& f, std::size_t digits) {
  auto second = std::async(std::launch::async, [&f, digits] { return arctan_fast(f.arctan_argument(), digits); });
  const FixedReal first = arctan_fast(BigRational(BigInt(1), f.beta1), digits);
  return first.scaled(BigRational(f.alpha1)) + second.get();
}

/// pi truncated to `digits` places by evaluating both series terms.
inline FixedReal pi_by_series(const MachinFormula& f, std::size_t digits) {
  return truncate_places(machin_sum(f, digits).scaled(BigRational(4)), digits).with_precision(digits);
}

struct ValidationResult {
  bool ok = false;
  FixedReal residual;  // |pi/4 - alpha1 arctan(1/beta1) - arctan(1/beta2)|
};

/// Checks the identity against an AGM pi; ok iff residual < 10^-digits.
inline ValidationResult validate(const MachinFormula& f, std::size_t digits) {
  if (digits == 0) throw DomainError("validate needs at least one digit");
  const FixedReal quarter_pi = pi_gauss_legendre(digits + kGuardDigits).scaled(BigRational(BigInt(1), BigInt(4)));
  const FixedReal residual = (quarter_pi - machin_sum(f, digits + kGuardDigits)).abs();
  return {residual < FixedReal(BigInt(1), digits), residual};
}

struct GenerateOptions {
  int max_k = kDefaultMaxK;
  std::size_t validation_digits = 50;
};

/// Rough decimal length of beta2's numerator and denominator:
/// 2^(k-2) log10(beta1^2 + 1).
inline double estimated_beta2_digits(int k, const BigInt& beta1) {
  return std::ldexp(1.0, k - 2) * (pow(beta1, 2) + BigInt(1)).log10_abs();
}

inline MachinFormula generate(int k, const GenerateOptions& options = {}) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
  if (k > options.max_k) {
    std::ostringstream msg;
    msg << "k=" << k << " exceeds the maximum k=" << options.max_k
        << ": beta2's numerator and denominator double in length with every increment of k";
    const double est = estimated_beta2_digits(k, select_beta1(k));
    msg << " (about " << static_cast<long long>(est) << " digits each here";
    if (k == 27) msg << "; the k=27 denominator has 522,185,807 digits";
    msg << ")";
    throw DomainError(msg.str());
  }
  MachinFormula f;
  f.k = k;
  f.alpha1 = BigInt::pow2(static_cast<std::size_t>(k - 1));
  f.beta1 = select_beta1(k);
  f.beta2 = compute_beta2(BigRational(f.beta1), k);
  if (options.validation_digits > 0) {
    const ValidationResult v = validate(f, options.validation_digits);
    if (!v.ok) throw Error("generated formula for k=" + std::to_string(k) + " failed validation");
  }
  return f;
}

/// Text export of beta2:
///
///   k=<k> beta1=<beta1> num_digits=<n> den_digits=<d>
///   <signed numerator>
///   <denominator>
inline void write_beta2(std::ostream& os, const MachinFormula& f) {
  const BigInt num = f.beta2.num();
  const BigInt den = f.beta2.den();
  os << "k=" << f.k << " beta1=" << f.beta1 << " num_digits=" << num.digit_count()
     << " den_digits=" << den.digit_count() << '\n'
     << num << '\n'
     << den << '\n';
}

/// Reads the export format. The header digit counts must match the values.
inline MachinFormula read_beta2(std::istream& is) {
  std::string header;
  std::string num_line;
  std::string den_line;
  if (!std::getline(is, header) || !std::getline(is, num_line) || !std::getline(is, den_line)) {
    throw DomainError("beta2 file needs a header line, a numerator line and a denominator line");
  }
  int k = 0;
  std::string beta1_text;
  std::size_t num_digits = 0;
  std::size_t den_digits = 0;
  std::istringstream hs(header);
  std::string field;
  int seen = 0;
  while (hs >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw DomainError("malformed header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "k") {
        k = std::stoi(value);
      } else if (key == "beta1") {
        beta1_text = value;
      } else if (key == "num_digits") {
        num_digits = std::stoul(value);
      } else if (key == "den_digits") {
        den_digits = std::stoul(value);
      } else {
        throw DomainError("unknown header field '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw DomainError("malformed header value in '" + field + "'");
    }
    ++seen;
  }
  if (seen != 4 || beta1_text.empty()) throw DomainError("header must carry k, beta1, num_digits, den_digits");
  if (k < 2 || k > 63) throw DomainError("header k out of range");
  MachinFormula f;
  f.k = k;
  f.alpha1 = BigInt::pow2(static_cast<std::size_t>(k - 1));
  f.beta1 = BigInt::from_string(beta1_text);
  const BigInt num = BigInt::from_string(num_line);
  const BigInt den = BigInt::from_string(den_line);
  if (num.digit_count() != num_digits || den.digit_count() != den_digits) {
    throw Error("beta2 digit counts do not match the header");
  }
  f.beta2 = BigRational(num, den);
  return f;
}

}  // namespace machin

#pragma once

// arctan(x) by the g/h series
//
//   arctan(x) = 2 * sum_{m>=1} 1/(2m-1) * g_m / (g_m^2 + h_m^2),
//   g_1 = 2/x, h_1 = 1,
//   g_m = g_{m-1} (1 - 4/x^2) + 4 h_{m-1} / x,
//   h_m = h_{m-1} (1 - 4/x^2) - 4 g_{m-1} / x,
//
// plus the Gregory (Maclaurin) series, kept as an independent check.
// g_m + i h_m = i (1 - 2i/x)^(2m-1), so the m-th summand is bounded by
// (1 + 4/x^2)^(-(2m-1)/2) and each term adds about 2 log10(2/|x|) digits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "machin/bignum.hpp"

namespace machin {

/// Per-step multipliers of the recurrence: damping = 1 - 4/x^2, coupling = 4/x.
struct GHCoefficients {
  BigRational damping;
  BigRational coupling;

  static GHCoefficients for_argument(const BigRational& x) {
    if (x.is_zero()) throw DomainError("g/h recurrence needs x != 0");
    const BigRational inv = x.reciprocal();
    return {BigRational(1) - BigRational(4) * inv * inv, BigRational(4) * inv};
  }
};

template <class Scalar>
struct GHState {
  std::size_t m = 1;
  Scalar g;
  Scalar h;
  Scalar partial_sum;
};

/// Exact rational evaluation. Sizes explode with m; meant for small m.
struct ExactArithmetic {
  using Scalar = BigRational;
  [[nodiscard]] Scalar lift(const BigRational& q) const { return q; }
  [[nodiscard]] Scalar times(const Scalar& s, const BigRational& q) const { return s * q; }
  [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  [[nodiscard]] Scalar div(const Scalar& a, const Scalar& b) const { return a / b; }
};

/// Fixed-point evaluation at a set number of decimal places.
struct FixedArithmetic {
  using Scalar = FixedReal;
  std::size_t places;
  [[nodiscard]] Scalar lift(const BigRational& q) const { return FixedReal::from_rational(q, places); }
  [[nodiscard]] Scalar times(const Scalar& s, const BigRational& q) const { return s.scaled(q); }
  [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const { return FixedReal::mul(a, b, places); }
  [[nodiscard]] Scalar div(const Scalar& a, const Scalar& b) const { return FixedReal::div(a, b, places); }
};

namespace detail {

template <class Arith>
typename Arith::Scalar gh_summand(std::size_t m, const typename Arith::Scalar& g,
                                  const typename Arith::Scalar& h, const Arith& arith) {
  const auto norm = arith.mul(g, g) + arith.mul(h, h);
  return arith.times(arith.div(g, norm), BigRational(BigInt(2), BigInt(2 * m - 1)));
}

}  // namespace detail

/// State at m = 1: g = 2/x, h = 1, partial sum = first summand.
template <class Arith>
GHState<typename Arith::Scalar> gh_initial(const BigRational& x, const Arith& arith) {
  if (x.is_zero()) throw DomainError("g/h recurrence needs x != 0");
  GHState<typename Arith::Scalar> s;
  s.m = 1;
  s.g = arith.lift(BigRational(2) / x);
  s.h = arith.lift(BigRational(1));
  s.partial_sum = detail::gh_summand(1, s.g, s.h, arith);
  return s;
}

/// Advances g and h by one index and adds the next summand.
template <class Arith>
GHState<typename Arith::Scalar> gh_step(const GHState<typename Arith::Scalar>& s, const GHCoefficients& c,
                                        const Arith& arith) {
  GHState<typename Arith::Scalar> next;
  next.m = s.m + 1;
  next.g = arith.times(s.g, c.damping) + arith.times(s.h, c.coupling);
  next.h = arith.times(s.h, c.damping) - arith.times(s.g, c.coupling);
  next.partial_sum = s.partial_sum + detail::gh_summand(next.m, next.g, next.h, arith);
  return next;
}

template <class Arith>
GHState<typename Arith::Scalar> gh_step(const GHState<typename Arith::Scalar>& s, const BigRational& x,
                                        const Arith& arith) {
  return gh_step(s, GHCoefficients::for_argument(x), arith);
}

/// Term count and accuracy target for one series evaluation.
struct SeriesBudget {
  std::size_t target_digits = 1;
  std::size_t terms = 1;
  std::size_t guard_digits = 0;
};

/// Smallest M with 4 * (1 + 4/x^2)^(-(2M+1)/2) < 10^-(digits + guard).
///
/// The tail after M terms is at most 2 rho^(2M+1) / (1 - rho^2) with
/// rho^2 = 1/(1 + 4/x^2) <= 1/5 for |x| < 1, hence the factor 4.
inline std::size_t estimate_terms(const BigRational& x, std::size_t digits, std::size_t guard = 0) {
  if (x.is_zero() || x.abs() >= BigRational(1)) {
    throw DomainError("estimate_terms needs 0 < |x| < 1");
  }
  // log10(1 + 4/x^2), stable for tiny x.
  const double t = std::log10(4.0) - 2.0 * x.log10_abs();
  const double log_base = t > 30.0 ? t : std::log10(1.0 + std::pow(10.0, t));
  const double need = static_cast<double>(digits + guard) + std::log10(4.0);
  const double m = (2.0 * need / log_base - 1.0) / 2.0;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
}

inline SeriesBudget make_series_budget(const BigRational& x, std::size_t digits,
                                       std::size_t guard = kGuardDigits) {
  return {digits, estimate_terms(x, digits, guard), guard};
}

/// Partial sums S_1 .. S_terms of the g/h series at `places` decimal places.
inline std::vector<FixedReal> arctan_partial_sums(const BigRational& x, std::size_t terms, std::size_t places) {
  const FixedArithmetic arith{places};
  const GHCoefficients c = GHCoefficients::for_argument(x);
  std::vector<FixedReal> sums;
  sums.reserve(terms);
  auto state = gh_initial(x, arith);
  sums.push_back(state.partial_sum);
  for (std::size_t m = 2; m <= terms; ++m) {
    state = gh_step(state, c, arith);
    sums.push_back(state.partial_sum);
  }
  return sums;
}

/// arctan(x) to `digits` decimal places by the g/h series. The result keeps
/// kGuardDigits extra places (scale = digits + guard, precision = digits).
inline FixedReal arctan_fast(const BigRational& x, std::size_t digits) {
  const std::size_t places = digits + kGuardDigits;
  if (x.is_zero()) return FixedReal(BigInt(0), places, digits);
  if (x.abs() >= BigRational(1)) throw DomainError("arctan_fast supports |x| < 1 only");
  const SeriesBudget budget = make_series_budget(x, digits);
  const FixedReal sum = arctan_partial_sums(x, budget.terms, places).back();
  return sum.with_precision(digits);
}

/// arctan(x) to `digits` places by x - x^3/3 + x^5/5 - ...; summation stops
/// once x^(2m+1) vanishes at the working scale.
inline FixedReal arctan_gregory(const BigRational& x, std::size_t digits) {
  const std::size_t places = digits + kGuardDigits;
  if (x.abs() >= BigRational(1)) throw DomainError("arctan_gregory supports |x| < 1 only");
  FixedReal sum(BigInt(0), places);
  if (x.is_zero()) return sum.with_precision(digits);
  const BigRational x2 = x * x;
  FixedReal power = FixedReal::from_rational(x, places);
  for (std::size_t m = 0; !power.is_zero(); ++m) {
    const FixedReal term = power.scaled(BigRational(BigInt(1), BigInt(2 * m + 1)));
    sum = (m % 2 == 0) ? sum + term : sum - term;
    power = power.scaled(x2);
  }
  return sum.with_precision(digits);
}

/// Accuracy (decimal places) of each partial sum S_1..S_terms of the g/h
/// series against a Gregory-series reference.
inline std::vector<std::size_t> measure_term_accuracy(const BigRational& x, std::size_t terms,
                                                      std::size_t places) {
  const FixedReal reference = arctan_gregory(x, places);
  std::vector<std::size_t> accuracy;
  for (const FixedReal& s : arctan_partial_sums(x, terms, places + kGuardDigits)) {
    accuracy.push_back(std::min(decimal_accuracy(s - reference), places));
  }
  return accuracy;
}

/// Predicted digit gain per term, 2 log10(2/|x|) for small x.
inline double predicted_gain_per_term(const BigRational& x) {
  const double t = std::log10(4.0) - 2.0 * x.log10_abs();
  return t > 30.0 ? t : std::log10(1.0 + std::pow(10.0, t));
}

}  // namespace machin

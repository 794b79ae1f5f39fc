#pragma once

// pi from a two-term formula by solving tan(y) = 1/beta2 with Newton-Raphson:
//
//   y_{n+1} = y_n - (1 - sin^2 y_n) (sin y_n / cos y_n - 1/beta2),
//   pi ~ 4 (alpha1 arctan(1/beta1) + y_n).
//
// Each step roughly doubles the correct digits, so y_n (and 1/beta2) are only
// carried at the current working precision, which doubles from step to step.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "machin/arctan.hpp"
#include "machin/bignum.hpp"
#include "machin/formula.hpp"
#include "machin/reference.hpp"

namespace machin {

/// Maclaurin truncation for sin/cos: terms m = 0..terms, evaluated at
/// `digits` decimal places.
struct TrigBudget {
  std::size_t terms = 20;
  std::size_t digits = 0;
};

/// Smallest term count whose first omitted Maclaurin term, |y|^(2M+2)/(2M+2)!,
/// is below 10^-(digits + guard).
inline TrigBudget make_trig_budget(const FixedReal& y, std::size_t digits) {
  const double ay = std::fabs(y.to_double());
  if (ay >= 1.0) throw DomainError("trig budget supports |y| < 1 only");
  const double target = -static_cast<double>(digits + kGuardDigits);
  if (ay == 0.0) return {1, digits};
  const double log_y = std::log10(ay);
  std::size_t terms = 1;
  for (;; ++terms) {
    const double n = static_cast<double>(2 * terms + 2);
    if (n * log_y - std::lgamma(n + 1.0) / std::log(10.0) < target) break;
  }
  return {terms, digits};
}

namespace detail {

// sum_{m=0}^{terms} (-1)^m y^(2m+first)/(2m+first)!
inline FixedReal maclaurin(const FixedReal& y, const TrigBudget& b, std::size_t first) {
  const std::size_t places = b.digits;
  const FixedReal y_sq = FixedReal::mul(y, y, places);
  FixedReal term = first == 0 ? FixedReal::from_integer(1, places) : y.rescaled(places);
  FixedReal sum = term;
  for (std::size_t m = 1; m <= b.terms && !term.is_zero(); ++m) {
    const std::size_t n = 2 * m + first;
    term = FixedReal::mul(term, y_sq, places).scaled(BigRational(BigInt(-1), BigInt(n * (n - 1))));
    sum = sum + term;
  }
  return sum.with_precision(places);
}

}  // namespace detail

inline FixedReal sin_trunc(const FixedReal& y, const TrigBudget& b) { return detail::maclaurin(y, b, 1); }
inline FixedReal cos_trunc(const FixedReal& y, const TrigBudget& b) { return detail::maclaurin(y, b, 0); }

struct NewtonUpdate {
  FixedReal y;
  FixedReal sin_y;
  FixedReal cos_y;
};

/// One update with sin, cos and 1/beta2 all taken at b.digits places.
inline NewtonUpdate nr_update(const FixedReal& y, const BigRational& x_target, const TrigBudget& b) {
  const std::size_t places = b.digits;
  const FixedReal s = sin_trunc(y, b);
  const FixedReal c = cos_trunc(y, b);
  if (c.is_zero()) throw DivisionByZero("cos(y) vanished in the Newton step");
  const FixedReal x = FixedReal::from_rational(x_target, places);
  const FixedReal tan_y = FixedReal::div(s, c, places);
  const FixedReal weight = FixedReal::from_integer(1, places) - FixedReal::mul(s, s, places);
  const FixedReal next = y.rescaled(places) - FixedReal::mul(weight, tan_y - x, places);
  return {next.with_precision(places), s, c};
}

inline FixedReal nr_step(const FixedReal& y, const BigRational& x_target, const TrigBudget& b) {
  return nr_update(y, x_target, b).y;
}

struct IterationState {
  std::size_t n = 1;
  FixedReal y;
  std::size_t working_digits = 0;
  FixedReal pi_estimate;
  /// Largest d with |estimate - previous estimate| < 10^-d (-1 at n = 1).
  long stable_digits = -1;
  /// Largest d with |estimate - reference| < 10^-d, when a reference is supplied.
  std::optional<long> correct_digits;
  /// |sin^2 y + cos^2 y - 1| at the y this step started from (zero at n = 1).
  FixedReal pythagorean_residual;
  std::chrono::nanoseconds wall{0};
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<IterationState> trace)
      : Error(what), trace_(std::move(trace)) {}
  [[nodiscard]] const std::vector<IterationState>& trace() const { return trace_; }

 private:
  std::vector<IterationState> trace_;
};

namespace detail {

inline FixedReal pi_from(const MachinFormula& f, const FixedReal& arctan_beta1, const FixedReal& y) {
  return (arctan_beta1.scaled(BigRational(f.alpha1)) + y).scaled(BigRational(4));
}

}  // namespace detail

/// y_1 = pi_approx/4 - alpha1 arctan(1/beta1), truncated to `y_places`.
inline IterationState seed(const FixedReal& pi_approx, const MachinFormula& f, const FixedReal& arctan_beta1,
                           std::size_t y_places) {
  const std::size_t places = arctan_beta1.scale();
  const FixedReal quarter = pi_approx.rescaled(places).scaled(BigRational(BigInt(1), BigInt(4)));
  const FixedReal y_full = quarter - arctan_beta1.scaled(BigRational(f.alpha1));
  IterationState s;
  s.n = 1;
  s.y = truncate_places(y_full, y_places);
  s.working_digits = y_places;
  s.pi_estimate = detail::pi_from(f, arctan_beta1, s.y);
  s.pythagorean_residual = FixedReal(BigInt(0), y_places);
  return s;
}

struct NewtonOptions {
  std::size_t seed_digits = 5;
  /// Starting pi; defaults to the embedded reference cut to seed_digits places.
  std::optional<FixedReal> seed_pi = std::nullopt;
  /// Optional reference used only to fill IterationState::correct_digits.
  std::optional<FixedReal> reference = std::nullopt;
  std::size_t max_iterations = 64;
};

struct NewtonResult {
  FixedReal pi;
  std::vector<IterationState> trace;
};

/// pi to `target_digits` places. arctan(1/beta1) is evaluated once at full
/// precision; y starts at seed_digits + 1 places and its working precision
/// doubles per step up to target + guard. Stops once two consecutive
/// estimates agree on target_digits places.
inline NewtonResult compute_pi(const MachinFormula& f, std::size_t target_digits, const NewtonOptions& opts = {}) {
  if (opts.seed_digits < 3) throw DomainError("seed needs at least 3 digits");
  if (target_digits < opts.seed_digits) throw DomainError("target digits must be >= seed digits");
  const std::size_t cap = target_digits + kGuardDigits;
  const BigRational x = f.arctan_argument();
  const auto started = std::chrono::steady_clock::now();

  const FixedReal arctan_beta1 = arctan_fast(BigRational(BigInt(1), f.beta1), cap);
  const FixedReal pi_seed = opts.seed_pi ? truncate_places(*opts.seed_pi, opts.seed_digits)
                                         : embedded_pi(opts.seed_digits);

  auto measure = [&](IterationState& s) {
    if (opts.reference) {
      const std::size_t d = decimal_accuracy(s.pi_estimate - *opts.reference);
      s.correct_digits = static_cast<long>(std::min(d, opts.reference->scale()));
    }
  };

  std::vector<IterationState> trace;
  IterationState first = seed(pi_seed, f, arctan_beta1, opts.seed_digits + 1);
  measure(first);
  first.wall = std::chrono::steady_clock::now() - started;
  trace.push_back(first);

  if (target_digits == opts.seed_digits) {
    return {truncate_places(first.pi_estimate, target_digits).with_precision(target_digits), std::move(trace)};
  }

  std::size_t stalls = 0;
  while (true) {
    const IterationState& prev = trace.back();
    if (trace.size() >= opts.max_iterations) {
      throw ConvergenceError("no convergence within " + std::to_string(opts.max_iterations) + " iterations",
                             std::move(trace));
    }
    const auto step_start = std::chrono::steady_clock::now();
    const std::size_t working = std::min(2 * prev.working_digits, cap);
    const TrigBudget budget = make_trig_budget(prev.y, working + kGuardDigits);
    const NewtonUpdate update = nr_update(prev.y, x, budget);

    IterationState s;
    s.n = prev.n + 1;
    s.working_digits = working;
    s.y = truncate_places(update.y, working);
    s.pi_estimate = detail::pi_from(f, arctan_beta1, s.y);
    s.stable_digits = static_cast<long>(decimal_accuracy(s.pi_estimate - prev.pi_estimate));
    const FixedReal one = FixedReal::from_integer(1, budget.digits);
    s.pythagorean_residual = (FixedReal::mul(update.sin_y, update.sin_y, budget.digits) +
                              FixedReal::mul(update.cos_y, update.cos_y, budget.digits) - one)
                                 .abs();
    measure(s);
    s.wall = std::chrono::steady_clock::now() - step_start;

    stalls = (trace.size() >= 2 && s.stable_digits <= prev.stable_digits) ? stalls + 1 : 0;
    const bool done = working == cap && s.stable_digits >= static_cast<long>(target_digits);
    trace.push_back(std::move(s));
    if (done) break;
    if (stalls >= 2) {
      throw ConvergenceError("correct digits stopped increasing for two successive steps", std::move(trace));
    }
  }
  return {truncate_places(trace.back().pi_estimate, target_digits).with_precision(target_digits),
          std::move(trace)};
}

}  // namespace machin

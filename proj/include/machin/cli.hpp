#pragma once

// Command-line front end: generate, compute, validate, bench.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error,
// 3 computation failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "machin/arctan.hpp"
#include "machin/formula.hpp"
#include "machin/newton.hpp"
#include "machin/reference.hpp"
#include "machin/report.hpp"

namespace machin::cli {

enum ExitCode : int { kPass = 0, kVerifyFail = 1, kUsage = 2, kComputeFail = 3 };

/// Verification runs by default below this many digits.
inline constexpr std::size_t kAutoVerifyLimit = 10000;

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

inline double to_ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

inline std::string leading(const BigInt& v, std::size_t n = 20) {
  std::string s = v.abs().to_string();
  std::string sign = v.sign() < 0 ? "-" : "";
  return s.size() <= n ? sign + s : sign + s.substr(0, n) + "...";
}

inline FormulaSummary summarize(const MachinFormula& f) {
  return {f.k, f.beta1.to_string(), f.beta2.num().digit_count(), f.beta2.den().digit_count()};
}

inline std::size_t clamp_agreement(long places, std::size_t limit) {
  return places < 0 ? 0 : std::min(static_cast<std::size_t>(places), limit);
}

/// `digits` if the first min(digits, 100) places match the embedded
/// reference, otherwise the number that do.
inline std::size_t embedded_agreement(const FixedReal& pi, std::size_t digits) {
  const std::size_t e = std::min(digits, kEmbeddedPiPlaces);
  const std::size_t matched = clamp_agreement(agreeing_places(pi, embedded_pi(e)), e);
  return matched < e ? matched : digits;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (const T& v : values) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

inline std::vector<TraceRow> trace_rows(const std::vector<IterationState>& trace) {
  std::vector<TraceRow> rows;
  for (const auto& s : trace) rows.push_back({s.n, s.working_digits, s.stable_digits, s.correct_digits, to_ms(s.wall)});
  return rows;
}

inline void print_trace(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "step  working_digits  stable_digits  correct_digits  wall_ms\n";
  for (const auto& r : rows) {
    out << std::setw(4) << r.step << std::setw(16) << r.working_digits << std::setw(15) << r.stable_digits
        << std::setw(16) << (r.correct_digits ? std::to_string(*r.correct_digits) : "-") << "  " << std::fixed
        << std::setprecision(3) << r.wall_ms << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

/// Writes the report as JSON or hands off to the text printer.
template <class TextPrinter>
int finish(RunReport& report, bool json, Clock::time_point started, std::ostream& out, TextPrinter&& text) {
  report.wall_time_ms = static_cast<std::int64_t>(ms_since(started));
  if (json) {
    out << emit(report) << '\n';
  } else {
    text();
  }
  return report.exit_code;
}

inline GainRow measure_gain(int k, std::size_t terms) {
  const BigInt beta1 = select_beta1(k);
  const BigRational x(BigInt(1), beta1);
  const double predicted = predicted_gain_per_term(x);
  const auto places = std::max<std::size_t>(200, static_cast<std::size_t>(std::ceil(predicted * (terms + 1))) + 20);
  GainRow row;
  row.k = k;
  row.beta1 = beta1.to_string();
  row.places = places;
  row.accuracy = measure_term_accuracy(x, terms, places);
  row.predicted_gain = predicted;
  if (row.accuracy.size() >= 2) {
    row.min_gain = places;
    for (std::size_t m = 1; m < row.accuracy.size(); ++m) {
      const std::size_t g = row.accuracy[m] - row.accuracy[m - 1];
      row.min_gain = std::min(row.min_gain, g);
      row.max_gain = std::max(row.max_gain, g);
    }
    row.mean_gain = static_cast<double>(row.accuracy.back() - row.accuracy.front()) /
                    static_cast<double>(row.accuracy.size() - 1);
  }
  return row;
}

}  // namespace detail

inline int cmd_generate(int k, int max_k, const std::string& output_path, bool json, std::ostream& out,
                        std::ostream& err) {
  const auto started = detail::Clock::now();
  RunReport report;
  report.command = "generate";
  report.parameters = {{"k", std::to_string(k)}, {"max_k", std::to_string(max_k)}};
  if (!output_path.empty()) report.parameters["output"] = output_path;
  if (k < 2 || k > max_k) {
    try {
      generate(k, {max_k, 0});
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
    }
    return kUsage;
  }
  const MachinFormula f = generate(k, {max_k, 0});
  const ValidationResult v = validate(f, 50);
  report.formula = detail::summarize(f);
  report.result = f.beta2.to_string().size() <= 200 ? f.beta2.to_string() : "";
  report.verification = "identity";
  report.digits_requested = 50;
  report.digits_verified = v.ok ? 50 : decimal_accuracy(v.residual);
  report.exit_code = v.ok ? kPass : kVerifyFail;
  if (!output_path.empty()) {
    std::ofstream file(output_path);
    if (!file) {
      err << "error: cannot write " << output_path << '\n';
      return kUsage;
    }
    write_beta2(file, f);
  }
  return detail::finish(report, json, started, out, [&] {
    const BigRational x = f.arctan_argument();
    out << "k=" << f.k << " alpha1=" << f.alpha1 << " beta1=" << f.beta1 << '\n'
        << "beta2 = " << detail::leading(f.beta2.num()) << " / " << detail::leading(f.beta2.den()) << '\n'
        << "beta2 num_digits=" << report.formula->beta2_num_digits
        << " den_digits=" << report.formula->beta2_den_digits << '\n'
        << "1/beta2 = " << detail::leading(x.num()) << " / " << detail::leading(x.den())
        << " (num_digits=" << x.num().digit_count() << " den_digits=" << x.den().digit_count() << ")\n"
        << "identity check to 50 digits: " << (v.ok ? "PASS" : "FAIL") << '\n';
    if (!output_path.empty()) out << "beta2 written to " << output_path << '\n';
  });
}

struct ComputeArgs {
  int k = 6;
  std::size_t digits = 0;
  std::string method = "series";
  std::size_t seed_digits = 5;
  int max_k = kDefaultMaxK;
  std::optional<bool> verify;
  bool json = false;
};

inline int cmd_compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
  const auto started = detail::Clock::now();
  RunReport report;
  report.command = "compute";
  report.parameters = {{"k", std::to_string(a.k)},
                       {"digits", std::to_string(a.digits)},
                       {"method", a.method},
                       {"seed_digits", std::to_string(a.seed_digits)}};
  report.digits_requested = a.digits;
  if (a.digits == 0) {
    err << "error: --digits must be at least 1\n";
    return kUsage;
  }
  if (a.method != "series" && a.method != "newton") {
    err << "error: --method must be series or newton\n";
    return kUsage;
  }
  if (a.k < 2 || a.k > a.max_k) {
    err << "error: --k must lie in [2, " << a.max_k << "]\n";
    return kUsage;
  }
  const bool newton_possible = a.seed_digits >= 3 && a.seed_digits <= a.digits && a.seed_digits <= kEmbeddedPiPlaces;
  if (a.method == "newton" && !newton_possible) {
    err << "error: newton needs 3 <= --seed-digits <= min(--digits, 100)\n";
    return kUsage;
  }
  const bool verify = a.verify.value_or(a.digits < kAutoVerifyLimit);
  report.parameters["verify"] = verify ? "true" : "false";

  std::optional<MachinFormula> f;
  FixedReal pi;
  std::optional<FixedReal> other;
  try {
    f = generate(a.k, {a.max_k, 0});
    report.formula = detail::summarize(*f);
    if (a.method == "series") {
      pi = pi_by_series(*f, a.digits);
      if (verify && newton_possible) {
        other = compute_pi(*f, a.digits, {.seed_digits = a.seed_digits}).pi;
        report.verification = "newton";
      }
    } else {
      NewtonOptions opts{.seed_digits = a.seed_digits};
      if (verify) {
        const FixedReal series_full = machin_sum(*f, a.digits).scaled(BigRational(4));
        other = truncate_places(series_full, a.digits);
        opts.reference = series_full;
        report.verification = "series";
      }
      const NewtonResult r = compute_pi(*f, a.digits, opts);
      pi = r.pi;
      report.trace = detail::trace_rows(r.trace);
    }
  } catch (const ConvergenceError& e) {
    report.trace = detail::trace_rows(e.trace());
    report.exit_code = kComputeFail;
    report.message = e.what();
    err << "error: " << e.what() << '\n';
    detail::print_trace(err, report.trace);
    return detail::finish(report, a.json, started, out, [] {});
  } catch (const Error& e) {
    report.exit_code = kComputeFail;
    report.message = e.what();
    err << "error: " << e.what() << '\n';
    return detail::finish(report, a.json, started, out, [] {});
  }

  report.result = pi.to_string();
  if (verify) {
    std::size_t verified = a.digits;
    if (other) verified = std::min(verified, detail::clamp_agreement(agreeing_places(pi, *other), a.digits));
    verified = std::min(verified, detail::embedded_agreement(pi, a.digits));
    if (!other) report.verification = "embedded";
    report.digits_verified = verified;
    report.exit_code = verified < a.digits ? kVerifyFail : kPass;
  }
  return detail::finish(report, a.json, started, out, [&] {
    out << report.result << '\n';
    out << "method=" << a.method << " k=" << a.k << " digits=" << a.digits;
    if (a.method == "newton") out << " seed_digits=" << a.seed_digits;
    out << '\n';
    if (!report.trace.empty()) detail::print_trace(out, report.trace);
    if (verify) {
      out << "verified " << report.digits_verified << " of " << a.digits << " digits against "
          << report.verification << ": " << (report.exit_code == kPass ? "PASS" : "FAIL") << '\n';
    }
  });
}

inline int cmd_validate(int k, std::size_t digits, const std::string& formula_path, int max_k, bool json,
                        std::ostream& out, std::ostream& err) {
  const auto started = detail::Clock::now();
  RunReport report;
  report.command = "validate";
  report.parameters = {{"k", std::to_string(k)}, {"digits", std::to_string(digits)}};
  report.digits_requested = digits;
  report.verification = "identity";
  if (digits == 0) {
    err << "error: --digits must be at least 1\n";
    return kUsage;
  }
  MachinFormula f;
  if (!formula_path.empty()) {
    report.parameters["formula"] = formula_path;
    std::ifstream file(formula_path);
    if (!file) {
      err << "error: cannot read " << formula_path << '\n';
      return kUsage;
    }
    try {
      f = read_beta2(file);
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const Error& e) {
      report.exit_code = kVerifyFail;
      report.message = e.what();
      return detail::finish(report, json, started, out, [&] { out << "FAIL: " << e.what() << '\n'; });
    }
  } else {
    if (k < 2 || k > max_k) {
      err << "error: --k must lie in [2, " << max_k << "]\n";
      return kUsage;
    }
    f = generate(k, {max_k, 0});
  }
  report.formula = detail::summarize(f);
  const ValidationResult v = validate(f, digits);
  report.digits_verified = v.ok ? digits : std::min(decimal_accuracy(v.residual), digits);
  report.exit_code = v.ok ? kPass : kVerifyFail;
  const std::string residual = v.residual.is_zero()
                                   ? "0 at " + std::to_string(v.residual.scale()) + " places"
                                   : "< 1e-" + std::to_string(decimal_accuracy(v.residual));
  report.message = "residual " + residual;
  return detail::finish(report, json, started, out, [&] {
    out << "k=" << f.k << " beta1=" << f.beta1 << " digits=" << digits << " residual " << residual << '\n'
        << (v.ok ? "PASS" : "FAIL") << '\n';
  });
}

struct BenchArgs {
  std::vector<int> k_list;
  std::vector<std::size_t> digits_list;
  std::vector<int> gain_k;
  std::size_t gain_terms = 10;
  std::vector<std::string> methods{"series", "newton"};
  std::size_t seed_digits = 5;
  int max_k = kDefaultMaxK;
  bool json = false;
};

inline int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto started = detail::Clock::now();
  RunReport report;
  report.command = "bench";
  if (a.k_list.empty()) {
    err << "error: --k-list must name at least one k\n";
    return kUsage;
  }
  for (int k : a.k_list) {
    if (k < 2 || k > a.max_k) {
      err << "error: k=" << k << " outside [2, " << a.max_k << "]\n";
      return kUsage;
    }
  }
  for (int k : a.gain_k) {
    if (k < 2 || k > 60) {
      err << "error: --gain-k value " << k << " outside [2, 60]\n";
      return kUsage;
    }
  }
  if (a.gain_terms < 2) {
    err << "error: --gain-terms must be at least 2\n";
    return kUsage;
  }
  for (const auto& m : a.methods) {
    if (m != "series" && m != "newton") {
      err << "error: unknown method " << m << '\n';
      return kUsage;
    }
  }
  report.parameters = {{"k_list", detail::join(a.k_list)}, {"digits_list", detail::join(a.digits_list)}};

  bool all_verified = true;
  try {
    for (int k : a.k_list) {
      const MachinFormula f = generate(k, {a.max_k, 0});
      for (std::size_t digits : a.digits_list) {
        std::optional<FixedReal> series_pi;
        std::optional<FixedReal> newton_pi;
        std::vector<BenchRow> cell;
        for (const auto& method : a.methods) {
          const auto t = detail::Clock::now();
          BenchRow row{k, method, digits, 0, 0, 0.0};
          if (method == "series") {
            series_pi = pi_by_series(f, digits);
            row.terms_or_iterations = estimate_terms(BigRational(BigInt(1), f.beta1), digits + 2 * kGuardDigits) +
                                      estimate_terms(f.arctan_argument(), digits + 2 * kGuardDigits);
          } else {
            const std::size_t seed = std::min(a.seed_digits, digits);
            if (seed < 3) continue;
            const NewtonResult r = compute_pi(f, digits, {.seed_digits = seed});
            newton_pi = r.pi;
            row.terms_or_iterations = r.trace.size() - 1;
          }
          row.wall_ms = detail::ms_since(t);
          cell.push_back(row);
        }
        for (auto& row : cell) {
          const FixedReal& mine = row.method == "series" ? *series_pi : *newton_pi;
          const std::optional<FixedReal>& theirs = row.method == "series" ? newton_pi : series_pi;
          std::size_t verified = digits;
          if (theirs) verified = detail::clamp_agreement(agreeing_places(mine, *theirs), digits);
          verified = std::min(verified, detail::embedded_agreement(mine, digits));
          row.verified_digits = verified;
          all_verified = all_verified && verified == digits;
          report.bench.push_back(row);
        }
      }
    }
    const std::vector<int>& gain_k = a.gain_k.empty() ? a.k_list : a.gain_k;
    for (int k : gain_k) report.gain.push_back(detail::measure_gain(k, a.gain_terms));
  } catch (const Error& e) {
    report.exit_code = kComputeFail;
    report.message = e.what();
    err << "error: " << e.what() << '\n';
    return detail::finish(report, a.json, started, out, [] {});
  }
  report.exit_code = all_verified ? kPass : kVerifyFail;
  report.verification = "series/newton";
  return detail::finish(report, a.json, started, out, [&] {
    out << "   k  method    digits  terms/iters  verified   wall_ms\n";
    for (const auto& r : report.bench) {
      out << std::setw(4) << r.k << "  " << std::left << std::setw(8) << r.method << std::right << std::setw(8)
          << r.digits << std::setw(13) << r.terms_or_iterations << std::setw(10) << r.verified_digits << "  "
          << std::fixed << std::setprecision(3) << r.wall_ms << '\n';
      out.unsetf(std::ios::floatfield);
    }
    out << "\nper-term digit gain of arctan(1/beta1)\n";
    out << "   k       beta1  terms  places  mean_gain  min  max  predicted\n";
    for (const auto& g : report.gain) {
      out << std::setw(4) << g.k << std::setw(12) << g.beta1 << std::setw(7) << g.accuracy.size() << std::setw(8)
          << g.places << std::fixed << std::setprecision(2) << std::setw(11) << g.mean_gain << std::setw(5)
          << g.min_gain << std::setw(5) << g.max_gain << std::setw(11) << g.predicted_gain << '\n';
      out.unsetf(std::ios::floatfield);
    }
  });
}

/// Parses argv and dispatches. Never throws; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-term Machin-like formulas and pi by series or Newton-Raphson", "machinpi"};
  app.require_subcommand(1);

  int max_k = kDefaultMaxK;
  bool json = false;
  int k = 6;
  std::string output;

  auto* gen = app.add_subcommand("generate", "Build the formula for k and print beta1/beta2");
  gen->add_option("--k", k, "Nesting depth (alpha1 = 2^(k-1))")->required();
  gen->add_option("--output", output, "Write beta2 in the export format");
  gen->add_option("--max-k", max_k, "Largest k accepted");
  gen->add_flag("--json", json, "Emit a JSON report");

  ComputeArgs c;
  bool verify_on = false;
  bool verify_off = false;
  auto* comp = app.add_subcommand("compute", "Compute pi digits");
  comp->add_option("--k", c.k, "Formula depth");
  comp->add_option("--digits", c.digits, "Decimal places of pi")->required();
  comp->add_option("--method", c.method, "series or newton");
  comp->add_option("--seed-digits", c.seed_digits, "Known digits of pi the Newton iteration starts from");
  comp->add_option("--max-k", c.max_k, "Largest k accepted");
  comp->add_flag("--verify", verify_on, "Cross-check with the other method");
  comp->add_flag("--no-verify", verify_off, "Skip the cross-check");
  comp->add_flag("--json", c.json, "Emit a JSON report");

  std::size_t vdigits = 100;
  std::string formula_path;
  auto* val = app.add_subcommand("validate", "Check the two-term identity numerically");
  val->add_option("--k", k, "Formula depth");
  val->add_option("--digits", vdigits, "Digits the residual must vanish to");
  val->add_option("--formula", formula_path, "Read beta2 from an exported file instead of generating it");
  val->add_option("--max-k", max_k, "Largest k accepted");
  val->add_flag("--json", json, "Emit a JSON report");

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "Time both methods and measure per-term series gain");
  bench->add_option("--k-list", b.k_list, "Formula depths")->delimiter(',')->required();
  bench->add_option("--digits-list", b.digits_list, "Digit targets")->delimiter(',');
  bench->add_option("--gain-k", b.gain_k, "Depths whose arctan(1/beta1) gain is measured (default: --k-list)")
      ->delimiter(',');
  bench->add_option("--gain-terms", b.gain_terms, "Series terms in the gain measurement");
  bench->add_option("--methods", b.methods, "series,newton")->delimiter(',');
  bench->add_option("--seed-digits", b.seed_digits, "Newton seed digits");
  bench->add_option("--max-k", b.max_k, "Largest k accepted");
  bench->add_flag("--json", b.json, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(k, max_k, output, json, out, err);
    if (comp->parsed()) {
      if (verify_on && verify_off) {
        err << "error: --verify and --no-verify are exclusive\n";
        return kUsage;
      }
      if (verify_on) c.verify = true;
      if (verify_off) c.verify = false;
      return cmd_compute(c, out, err);
    }
    if (val->parsed()) return cmd_validate(k, vdigits, formula_path, max_k, json, out, err);
    if (bench->parsed()) return cmd_bench(b, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputeFail;
  }
  return kUsage;
}

}  // namespace machin::cli

#pragma once

// Machine-readable run report shared by every CLI command.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace machin {

struct FormulaSummary {
  int k = 0;
  std::string beta1;
  std::size_t beta2_num_digits = 0;
  std::size_t beta2_den_digits = 0;

  friend bool operator==(const FormulaSummary&, const FormulaSummary&) = default;
};

struct TraceRow {
  std::size_t step = 0;
  std::size_t working_digits = 0;
  long stable_digits = -1;
  std::optional<long> correct_digits;
  double wall_ms = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct BenchRow {
  int k = 0;
  std::string method;
  std::size_t digits = 0;
  std::size_t terms_or_iterations = 0;
  std::size_t verified_digits = 0;
  double wall_ms = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct GainRow {
  int k = 0;
  std::string beta1;
  std::size_t places = 0;
  std::vector<std::size_t> accuracy;  // correct places of S_1..S_M
  double mean_gain = 0.0;
  std::size_t min_gain = 0;
  std::size_t max_gain = 0;
  double predicted_gain = 0.0;

  friend bool operator==(const GainRow&, const GainRow&) = default;
};

struct RunReport {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::optional<FormulaSummary> formula;
  std::vector<TraceRow> trace;
  std::vector<BenchRow> bench;
  std::vector<GainRow> gain;
  std::string result;
  /// "series", "newton", "embedded", "identity" or "none".
  std::string verification = "none";
  std::size_t digits_requested = 0;
  std::size_t digits_verified = 0;
  std::int64_t wall_time_ms = 0;
  int exit_code = 0;
  std::string message;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline void to_json(nlohmann::json& j, const FormulaSummary& f) {
  j = {{"k", f.k}, {"beta1", f.beta1}, {"beta2_num_digits", f.beta2_num_digits},
       {"beta2_den_digits", f.beta2_den_digits}};
}
inline void from_json(const nlohmann::json& j, FormulaSummary& f) {
  j.at("k").get_to(f.k);
  j.at("beta1").get_to(f.beta1);
  j.at("beta2_num_digits").get_to(f.beta2_num_digits);
  j.at("beta2_den_digits").get_to(f.beta2_den_digits);
}

inline void to_json(nlohmann::json& j, const TraceRow& r) {
  j = {{"step", r.step}, {"working_digits", r.working_digits}, {"stable_digits", r.stable_digits},
       {"wall_ms", r.wall_ms}};
  j["correct_digits"] = r.correct_digits ? nlohmann::json(*r.correct_digits) : nlohmann::json(nullptr);
}
inline void from_json(const nlohmann::json& j, TraceRow& r) {
  j.at("step").get_to(r.step);
  j.at("working_digits").get_to(r.working_digits);
  j.at("stable_digits").get_to(r.stable_digits);
  j.at("wall_ms").get_to(r.wall_ms);
  const auto& c = j.at("correct_digits");
  r.correct_digits = c.is_null() ? std::nullopt : std::optional<long>(c.get<long>());
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BenchRow, k, method, digits, terms_or_iterations, verified_digits, wall_ms)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GainRow, k, beta1, places, accuracy, mean_gain, min_gain, max_gain,
                                   predicted_gain)

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"command", r.command},
       {"parameters", r.parameters},
       {"trace", r.trace},
       {"bench", r.bench},
       {"gain", r.gain},
       {"result", r.result},
       {"verification", r.verification},
       {"digits_requested", r.digits_requested},
       {"digits_verified", r.digits_verified},
       {"wall_time_ms", r.wall_time_ms},
       {"exit_code", r.exit_code},
       {"message", r.message}};
  j["formula"] = r.formula ? nlohmann::json(*r.formula) : nlohmann::json(nullptr);
}
inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("command").get_to(r.command);
  j.at("parameters").get_to(r.parameters);
  j.at("trace").get_to(r.trace);
  j.at("bench").get_to(r.bench);
  j.at("gain").get_to(r.gain);
  j.at("result").get_to(r.result);
  j.at("verification").get_to(r.verification);
  j.at("digits_requested").get_to(r.digits_requested);
  j.at("digits_verified").get_to(r.digits_verified);
  j.at("wall_time_ms").get_to(r.wall_time_ms);
  j.at("exit_code").get_to(r.exit_code);
  j.at("message").get_to(r.message);
  const auto& f = j.at("formula");
  r.formula = f.is_null() ? std::nullopt : std::optional<FormulaSummary>(f.get<FormulaSummary>());
}

inline std::string emit(const RunReport& r) { return nlohmann::json(r).dump(2); }
inline RunReport parse_report(const std::string& text) { return nlohmann::json::parse(text).get<RunReport>(); }

}  // namespace machin

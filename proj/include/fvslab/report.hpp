#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fvslab/polyhedral.hpp"

namespace fvslab {

using Json = nlohmann::ordered_json;

/// Fractions are always strings, e.g. "7/12", so they round-trip through Rational::parse.
Json to_json(const Rational& r);
Json to_json(const Cost& c);
Json to_json(const Vector& v);
Json to_json(const ViolatedConstraint& c);
/// {iteration, family, witness, lhs, rhs}
Json to_json(const CutLogEntry& e);
/// Per raise {set kind, S_i, epsilon, chosen vertex}, then reverse-delete decisions.
Json to_json(const PrimalDualResult& r);
Json to_json(const CertificateReport& r);
Json to_json(const IterativeRoundingResult& r);
Json to_json(const ExtremePointReport& r);
Json to_json(const TightSetReport& r);
Json to_json(const IntegralityGap& g);

/// One JSON object per line.
std::string cut_log_lines(const std::vector<CutLogEntry>& log);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Soft assertions are reported but only fail a run under the strictest policy.
  bool soft = false;
};

struct RunReport {
  std::string command;
  std::string input_digest;
  Json parameters = Json::object();
  Json results = Json::object();
  std::vector<Assertion> assertions;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0;

  void check(std::string name, bool passed, std::string detail = {}, bool soft = false);
  [[nodiscard]] bool hard_passed() const;
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] Json to_json() const;
  /// Assertions as aligned columns, then the results object.
  [[nodiscard]] std::string to_text() const;
};

/// Aligned columns; every row must have as many cells as the header.
std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

class Stopwatch {
public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace fvslab

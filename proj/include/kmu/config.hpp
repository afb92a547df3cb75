#pragma once

// Run configuration: one JSON document, optionally overridden by CLI flags.
//
//   {
//     "family": {"kind": "power", "n": 0.5, "domain": [0.0, 20.0]},
//     "sign": "plus",
//     "gauges": {"f": "zero", "h": {"kind": "poly", "coeffs": [0, 1]}},
//     "points": 100, "seed": 42, "tol": 1e-9,
//     "interval": "0.01:10", "grid": 10000, "c": 0.5,
//     "beta": 0, "lambda0": 0.5, "z0": 0, "step": 1e-3, "span": 1, "branch": "decreasing"
//   }

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmu/foliation.hpp"

namespace kmu {

enum class Command { verify, audit, curve_roots, surface_roots, foliate, leaf_report };
enum class OutputFormat { json, csv };

[[nodiscard]] std::string to_string(Command c);
[[nodiscard]] std::optional<Command> parse_command(const std::string& name);
[[nodiscard]] std::optional<OutputFormat> parse_format(const std::string& name);

/// Every problem found while reading a configuration, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct RunConfig {
  std::optional<LambdaFamily> family;
  Sign sign = Sign::plus;
  GaugeFunctions gauges{};

  std::size_t points = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::optional<Interval> interval;
  int grid = 10000;
  std::optional<double> c;
  double b = 0.0;  // x-offset of the Legendre curve for leaf reports
  FoliationParams foliation{};

  std::optional<Command> command;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::json;

  /// The configured space; throws ConfigError if no family was given.
  [[nodiscard]] ModelSpace space() const;
};

/// Parses and validates a configuration document. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// "lo:hi" → Interval.
Interval parse_interval(const std::string& text);

nlohmann::json family_to_json(const LambdaFamily& family);
nlohmann::json gauge_to_json(const GaugeFunction& g);
/// Canonical echo of a configuration, used in report envelopes.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace kmu

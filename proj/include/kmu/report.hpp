#pragma once

// Command dispatch and report serialization for the batch CLI.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kmu/config.hpp"

namespace kmu {

inline constexpr const char* kToolVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string, bool>;

struct ReportEnvelope {
  std::string tool_version = kToolVersion;
  nlohmann::json config;
  Command command = Command::verify;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::size_t pass_count = 0;
  std::size_t flag_count = 0;
  /// Command-specific extras (termination reason, recovered coefficients...).
  nlohmann::json details = nlohmann::json::object();
  /// Excluded from the determinism contract.
  std::string timestamp;

  /// 0 when nothing was flagged, 2 otherwise.
  [[nodiscard]] int exit_code() const { return flag_count == 0 ? 0 : 2; }
};

/// Runs one command. Throws ConfigError when the configuration lacks what the
/// command needs (no family, no c for leaf-report, an interval outside the
/// domain...). Flags never throw; they are counted in the envelope.
ReportEnvelope run(Command command, const RunConfig& cfg);

/// Full envelope; non-finite numbers become null.
nlohmann::json to_json(const ReportEnvelope& report);
/// Header line plus rows, numbers with 17 significant digits.
std::string to_csv(const ReportEnvelope& report);

/// Writes to `path`, or to stdout when no path is given. Throws
/// std::runtime_error naming the path on I/O failure.
void emit(const ReportEnvelope& report, OutputFormat format, const std::optional<std::string>& path);

}  // namespace kmu

#pragma once

#include "conformal/theorem.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace conformal::cli {

using json = nlohmann::json;

enum class ExitStatus : int {
  pass = 0,
  identity_failure = 1,
  hypothesis_violation = 2,
  config_error = 3,
};

struct ErrorRecord {
  std::string kind;
  std::string category;
  std::string message;

  bool operator==(const ErrorRecord&) const = default;
};

struct RunReport {
  std::string version;
  std::string command;
  json config;
  json result;
  std::string status;
  int exit_code = 0;
  std::optional<ErrorRecord> error;
  std::optional<double> wall_seconds;

  bool operator==(const RunReport&) const = default;
};

json to_json(const RunReport& report);
RunReport report_from_json(const json& document);
/// Two-space indented, keys sorted.
std::string serialize(const RunReport& report);

std::string_view status_name(ExitStatus status);

json to_json(const ConformalPoint& point);
json to_json(const VerificationReport& report);

}  // namespace conformal::cli

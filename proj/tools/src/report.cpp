#include "conformal_cli/report.hpp"

namespace conformal::cli {

std::string_view status_name(ExitStatus status) {
  switch (status) {
    case ExitStatus::pass: return "pass";
    case ExitStatus::identity_failure: return "identity-failure";
    case ExitStatus::hypothesis_violation: return "hypothesis-violation";
    case ExitStatus::config_error: return "config-error";
  }
  return "unknown";
}

json to_json(const RunReport& r) {
  json doc = {{"version", r.version}, {"command", r.command}, {"config", r.config},
              {"result", r.result},   {"status", r.status},   {"exit_code", r.exit_code}};
  if (r.error) {
    doc["error"] = {{"kind", r.error->kind}, {"category", r.error->category}, {"message", r.error->message}};
  }
  if (r.wall_seconds) doc["timing"] = {{"wall_seconds", *r.wall_seconds}};
  return doc;
}

RunReport report_from_json(const json& doc) {
  RunReport r;
  r.version = doc.at("version").get<std::string>();
  r.command = doc.at("command").get<std::string>();
  r.config = doc.at("config");
  r.result = doc.at("result");
  r.status = doc.at("status").get<std::string>();
  r.exit_code = doc.at("exit_code").get<int>();
  if (doc.contains("error")) {
    const json& e = doc["error"];
    r.error = ErrorRecord{e.at("kind"), e.at("category"), e.at("message")};
  }
  if (doc.contains("timing")) r.wall_seconds = doc["timing"].at("wall_seconds").get<double>();
  return r;
}

std::string serialize(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

json to_json(const ConformalPoint& p) {
  return {{"chart", p.chart},
          {"u", p.position.x()},
          {"v", p.position.y()},
          {"index", p.index},
          {"isolation_radius", p.isolation_radius},
          {"residual", p.residual}};
}

json to_json(const VerificationReport& r) {
  json points = json::array();
  for (const auto& p : r.points) points.push_back(to_json(p));
  return {{"points", points},
          {"windings", r.windings},
          {"euler_characteristic", r.euler_characteristic},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"pass", r.pass},
          {"search", {{"candidates", r.stats.candidates},
                      {"converged", r.stats.converged},
                      {"winding_cells", r.stats.winding_cells}}}};
}

}  // namespace conformal::cli

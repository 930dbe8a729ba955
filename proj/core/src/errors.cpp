#include "conformal/errors.hpp"

namespace conformal {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::unknown_identifier: return "UnknownIdentifier";
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::missing_binding: return "MissingBinding";
    case ErrorKind::degenerate_metric: return "DegenerateMetric";
    case ErrorKind::outside_domain: return "OutsideDomain";
    case ErrorKind::non_vanishing_violation: return "NonVanishingViolation";
    case ErrorKind::refinement_limit: return "RefinementLimit";
    case ErrorKind::zero_on_boundary: return "ZeroOnBoundary";
    case ErrorKind::non_isolated_zero: return "NonIsolatedZero";
    case ErrorKind::newton_divergence: return "NewtonDivergence";
    case ErrorKind::data_mismatch: return "DataMismatch";
    case ErrorKind::unsupported_surface: return "UnsupportedSurface";
    case ErrorKind::not_boundary_preserving: return "NotBoundaryPreserving";
    case ErrorKind::orientation_error: return "OrientationError";
    case ErrorKind::conformal_boundary_point: return "ConformalBoundaryPoint";
    case ErrorKind::eigenvalue_collision: return "EigenvalueCollision";
    case ErrorKind::hypothesis_violation: return "HypothesisViolation";
    case ErrorKind::degenerate_umbilic_locus: return "DegenerateUmbilicLocus";
    case ErrorKind::chart_not_isothermal: return "ChartNotIsothermal";
    case ErrorKind::flow_left_chart: return "FlowLeftChart";
    case ErrorKind::config: return "ConfigError";
    case ErrorKind::io: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax:
    case ErrorKind::unknown_identifier:
    case ErrorKind::missing_binding:
    case ErrorKind::data_mismatch:
    case ErrorKind::unsupported_surface:
    case ErrorKind::chart_not_isothermal:
    case ErrorKind::config:
    case ErrorKind::io:
      return ErrorCategory::input;
    case ErrorKind::domain:
    case ErrorKind::refinement_limit:
    case ErrorKind::newton_divergence:
    case ErrorKind::flow_left_chart:
      return ErrorCategory::numerical;
    default:
      return ErrorCategory::hypothesis;
  }
}

}  // namespace conformal

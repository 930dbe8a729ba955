#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conformal {

/// Every failure the library reports carries one of these kinds. The CLI maps
/// them onto exit statuses, so keep the grouping in `category()` in sync.
enum class ErrorKind {
  // expression input
  syntax,
  unknown_identifier,
  domain,
  missing_binding,
  // geometry
  degenerate_metric,
  outside_domain,
  // winding / zeros
  non_vanishing_violation,
  refinement_limit,
  zero_on_boundary,
  non_isolated_zero,
  newton_divergence,
  // theorem engine
  data_mismatch,
  unsupported_surface,
  // boundary diffeomorphisms
  not_boundary_preserving,
  orientation_error,
  conformal_boundary_point,
  eigenvalue_collision,
  hypothesis_violation,
  // embedded surfaces
  degenerate_umbilic_locus,
  // vector fields
  chart_not_isothermal,
  flow_left_chart,
  // configuration / io
  config,
  io,
};

enum class ErrorCategory { input, hypothesis, numerical };

std::string_view to_string(ErrorKind kind);
ErrorCategory category(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::syntax,
              "syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(const std::string& name)
      : Error(ErrorKind::unknown_identifier, "unknown identifier '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace conformal

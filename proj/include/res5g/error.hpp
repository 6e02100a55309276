#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace res5g {

enum class ErrorKind {
  InvalidGeometry,
  NegativeDryPressure,
  LoadExceedsCoherence,
  DegenerateDenominator,
  DemandUnservable,
  ParseError,
  ValidationError,
  MissingStep,
  NonMonotoneTimestamps,
  UnitRange,
  PlacementExhausted,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken so the CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace res5g

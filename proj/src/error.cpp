#include "res5g/error.hpp"

namespace res5g {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "invalid-geometry";
    case ErrorKind::NegativeDryPressure: return "negative-dry-pressure";
    case ErrorKind::LoadExceedsCoherence: return "load-exceeds-coherence";
    case ErrorKind::DegenerateDenominator: return "degenerate-denominator";
    case ErrorKind::DemandUnservable: return "demand-unservable";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::ValidationError: return "validation-error";
    case ErrorKind::MissingStep: return "missing-step";
    case ErrorKind::NonMonotoneTimestamps: return "non-monotone-timestamps";
    case ErrorKind::UnitRange: return "unit-range";
    case ErrorKind::PlacementExhausted: return "placement-exhausted";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace res5g

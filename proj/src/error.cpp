#include "floer/error.hpp"

namespace floer {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrorCode::InfiniteRing: return "InfiniteRing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TorsionGroup: return "TorsionGroup";
    case ErrorCode::InsufficientLedger: return "InsufficientLedger";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::MissingLocalSystem: return "MissingLocalSystem";
    case ErrorCode::CancellationFails: return "CancellationFails";
    case ErrorCode::NoLift: return "NoLift";
    case ErrorCode::TwoSidedRequired: return "TwoSidedRequired";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::NotSingleLevel: return "NotSingleLevel";
    case ErrorCode::InvalidProbe: return "InvalidProbe";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnknownScenario:
    case ErrorCode::BadParams:
      return true;
    default:
      return false;
  }
}

}  // namespace floer

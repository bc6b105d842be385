#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floer {

enum class ErrorCode {
  // input / validation
  Usage,
  ParseError,
  SchemaError,
  ValidationError,
  UnknownScenario,
  BadParams,
  // computation
  NonInvertibleDenominator,
  InfiniteRing,
  DimensionMismatch,
  TorsionGroup,
  InsufficientLedger,
  HypothesisViolated,
  MissingLocalSystem,
  CancellationFails,
  NoLift,
  TwoSidedRequired,
  BasisMismatch,
  UnknownLabel,
  Degenerate,
  UnsupportedShape,
  NotSingleLevel,
  InvalidProbe,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed or inconsistent input data, as opposed
/// to a computation that cannot be carried out on valid data.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace floer

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stgc {

enum class ErrorCode {
  NotIncreasing,
  EndpointMismatch,
  WindowTooShort,
  LengthMismatch,
  InvalidSeries,
  InvalidDof,
  DegenerateInput,
  NearCollinear,
  SingularDesign,
  ZeroResidual,
  InsufficientData,
  InfeasibleConstraint,
  DegenerateAgc,
  InvalidConfig,
  InvalidParams,
  DelayTooLarge,
  EmptyRoi,
  LabelMismatch,
  NumericalDivergence,
  ParseError,
  IoError,
  IncompatibleFlags,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for a failure of this kind: 1 usage, 2 data, 3 numerical.
[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stgc

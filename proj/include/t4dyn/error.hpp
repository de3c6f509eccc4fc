#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace t4 {

enum class ErrorCode {
  InvalidArgument,
  SingularOrbit,
  ChartMismatch,
  IncompatibleMetric,
  NonpositiveAlphaSquared,
  NonfiniteState,
  GridMismatch,
  SuspectedDoubleZero,
  InsufficientZeros,
  NonDecayingProfile,
  PhaseNearSingular,
  TrajectoryEscape,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularOrbit: return "SingularOrbit";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::IncompatibleMetric: return "IncompatibleMetric";
    case ErrorCode::NonpositiveAlphaSquared: return "NonpositiveAlphaSquared";
    case ErrorCode::NonfiniteState: return "NonfiniteState";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SuspectedDoubleZero: return "SuspectedDoubleZero";
    case ErrorCode::InsufficientZeros: return "InsufficientZeros";
    case ErrorCode::NonDecayingProfile: return "NonDecayingProfile";
    case ErrorCode::PhaseNearSingular: return "PhaseNearSingular";
    case ErrorCode::TrajectoryEscape: return "TrajectoryEscape";
  }
  return "Unknown";
}

/// Precondition and numerical failures raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerics rather than of the caller's input.
  bool is_numeric() const noexcept {
    return code_ == ErrorCode::NonfiniteState || code_ == ErrorCode::TrajectoryEscape ||
           code_ == ErrorCode::SuspectedDoubleZero || code_ == ErrorCode::InsufficientZeros ||
           code_ == ErrorCode::PhaseNearSingular;
  }

 private:
  ErrorCode code_;
};

}  // namespace t4

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evanesim {

enum class ErrorCode {
  InvalidArgument,
  NoTotalReflection,
  DegenerateInterface,
  SingularMatrix,
  NotSingleGap,
  GridTooCoarse,
  NotEvanescent,
  NoSaturation,
  BandwidthCoverage,
  EmptySignal,
};

std::string_view to_string(ErrorCode code);

/// Numeric-domain failure raised by the physics modules.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NoTotalReflection: return "no_total_reflection";
    case ErrorCode::DegenerateInterface: return "degenerate_interface";
    case ErrorCode::SingularMatrix: return "singular_matrix";
    case ErrorCode::NotSingleGap: return "not_single_gap";
    case ErrorCode::GridTooCoarse: return "grid_too_coarse";
    case ErrorCode::NotEvanescent: return "not_evanescent";
    case ErrorCode::NoSaturation: return "no_saturation";
    case ErrorCode::BandwidthCoverage: return "bandwidth_coverage";
    case ErrorCode::EmptySignal: return "empty_signal";
  }
  return "unknown";
}

}  // namespace evanesim

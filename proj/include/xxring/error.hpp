#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xxring {

enum class ErrorCode {
  NonHermitianInput,
  NoConvergence,
  NotPositiveSemidefinite,
  BadFieldLength,
  UnsupportedSize,
  MappingViolation,
  NonPositiveTau,
  BadSiteIndex,
  InvalidXState,
  NotDensityMatrix,
  DegenerateLimit,
  OutOfRange,
  ToleranceExceeded,
  NoThresholdFound,
  BadFigureId,
  InvalidArgument,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::BadFieldLength: return "BadFieldLength";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::MappingViolation: return "MappingViolation";
    case ErrorCode::NonPositiveTau: return "NonPositiveTau";
    case ErrorCode::BadSiteIndex: return "BadSiteIndex";
    case ErrorCode::InvalidXState: return "InvalidXState";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::DegenerateLimit: return "DegenerateLimit";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::NoThresholdFound: return "NoThresholdFound";
    case ErrorCode::BadFigureId: return "BadFigureId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xxring

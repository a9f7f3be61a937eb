#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nvsinc {

enum class ErrorCode {
  BandEdgeOutOfRange,
  OddN,
  NTooSmall,
  NTooLarge,
  NonFiniteTime,
  EmptyWindow,
  OmegaOutOfRange,
  QuadratureNotConverged,
  WindowExceedsGrid,
  InvalidSignalSpec,
  InvalidSamples,
  InvalidExperimentSpec,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BandEdgeOutOfRange: return "BandEdgeOutOfRange";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::NonFiniteTime: return "NonFiniteTime";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::WindowExceedsGrid: return "WindowExceedsGrid";
    case ErrorCode::InvalidSignalSpec: return "InvalidSignalSpec";
    case ErrorCode::InvalidSamples: return "InvalidSamples";
    case ErrorCode::InvalidExperimentSpec: return "InvalidExperimentSpec";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require_finite_time(double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFiniteTime, "time must be finite");
}

}  // namespace detail
}  // namespace nvsinc

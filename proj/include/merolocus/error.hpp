#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace merolocus {

enum class ErrorCode {
  NotRegularPoint,
  UnwrapAliasing,
  InvalidIndex,
  DegenerateGeometry,
  NonPositiveExponent,
  CorrectorDivergence,
  OutOfValidityRegion,
  UnknownFunction,
  EmptyInput,
  InvalidSpec,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotRegularPoint: return "NotRegularPoint";
    case ErrorCode::UnwrapAliasing: return "UnwrapAliasing";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorCode::CorrectorDivergence: return "CorrectorDivergence";
    case ErrorCode::OutOfValidityRegion: return "OutOfValidityRegion";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace merolocus

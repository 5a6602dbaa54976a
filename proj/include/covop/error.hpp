#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covop {

enum class ErrorCode {
  WindowMismatch,
  UnsupportedNormPair,
  NoConvergence,
  IndexOutOfWindow,
  NonFiniteEntry,
  EmptyArc,
  RadiusExceeded,
  UnknownFamily,
  OverlappingPieces,
  OutsideDisk,
  NotObservableMatrix,
  UnknownQuantity,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::UnsupportedNormPair: return "UnsupportedNormPair";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::IndexOutOfWindow: return "IndexOutOfWindow";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::EmptyArc: return "EmptyArc";
    case ErrorCode::RadiusExceeded: return "RadiusExceeded";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::OverlappingPieces: return "OverlappingPieces";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::NotObservableMatrix: return "NotObservableMatrix";
    case ErrorCode::UnknownQuantity: return "UnknownQuantity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above; the
// CLI maps the code name straight to its diagnostic output.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace covop

#include "dephase/error.hpp"

#include <sstream>

namespace dephase {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kBadDim: return "BadDim";
    case ErrorCode::kBadDims: return "BadDims";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kUnsupportedSubspace: return "UnsupportedSubspace";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kCutoffTooTight: return "CutoffTooTight";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream os;
  os << "invalid state:";
  for (const auto& d : diagnostics) os << ' ' << d.invariant << " (" << d.magnitude << ')';
  return os.str();
}

}  // namespace

InvalidStateError::InvalidStateError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::kInvalidState, describe(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace dephase

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dephase {

enum class ErrorCode {
  kNotHermitian,
  kNoConvergence,
  kNotPSD,
  kBadDim,
  kBadDims,
  kInvalidState,
  kUnsupportedSubspace,
  kSupportMismatch,
  kCutoffTooTight,
  kInvalidArgument,
  kInvalidConfig,
  kIoError,
  kNumericalFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// One violated state invariant and how far off it was.
struct Diagnostic {
  std::string invariant;
  double magnitude = 0.0;
};

class InvalidStateError : public Error {
 public:
  explicit InvalidStateError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace dephase

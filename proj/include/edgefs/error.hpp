#pragma once

#include <stdexcept>
#include <string>

namespace edgefs {

/// Every failure mode the library reports deliberately.  Codes are grouped
/// into classes (I/O vs. data vs. usage) so callers such as the CLI can map
/// them onto distinct exit codes without string matching.
enum class ErrorCode {
  // filesystem / stream level
  FileNotFound,
  WriteFailure,
  // parse / content level
  MalformedHeader,
  DimensionOverflow,
  TruncatedPayload,
  SchemaViolation,
  MissingImage,
  NonMonotonicTimestamps,
  // algorithm preconditions
  ImageTooSmall,
  LengthMismatch,
  InsufficientHistory,
  EmptyInput,
  // caller-supplied configuration
  BadConfig,
};

enum class ErrorClass { Usage, Io, Data };

constexpr ErrorClass errorClass(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::WriteFailure:
      return ErrorClass::Io;
    case ErrorCode::BadConfig:
      return ErrorClass::Usage;
    default:
      return ErrorClass::Data;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorClass errorClass() const { return edgefs::errorClass(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace edgefs

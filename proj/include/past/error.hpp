#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace past {

enum class ErrorCode {
  InvalidK,
  InvalidNode,
  ForeignStart,
  DuplicateBranch,
  SingleRecordRequired,
  EmptyPattern,
  PatternTooLong,
  InvalidThreshold,
  KmerTreeRequired,
  IoError,
  FormatError,
  ConfigError,
  InvalidDuration,
  Timeout,
  SequenceTooLong,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` carries the error kind the
/// CLI reports; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace past

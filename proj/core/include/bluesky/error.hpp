#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bluesky {

enum class ErrorCode {
  InvalidArgument,
  InvalidConfig,
  ConfigParse,
  NotInPositiveHalf,
  EscapedTube,
  CaseMismatch,
  Inconclusive,
  NoConvergence,
  NotACircleMap,
  NotExpandingInTheta,
  BranchAmbiguity,
  InsufficientData,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable, machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bluesky

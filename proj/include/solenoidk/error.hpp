#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solenoidk {

enum class ErrorCode {
  EmptyImage,
  NonSurjective,
  NonExpanding,
  InadmissibleGerm,
  NoFlattening,
  NeverCovers,
  IdentityViolation,
  DepthTooShallow,
  PrecisionUnreachable,
  IncompatibleEndo,
  NonCommuting,
  NeedUserMatrices,
  NotFree,
  NoWitnessFound,
  ParseError,
  UnknownEdge,
  IoError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto sk_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace solenoidk

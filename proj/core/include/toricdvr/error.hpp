#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricdvr {

// Every failure raised by the library carries one of these codes; callers
// (tests, the CLI) dispatch on the code rather than on the message.
enum class ErrorCode {
  // arith
  NotIntegral,
  NotPrime,
  SingularBasis,
  // polyhedral
  NotStronglyConvex,
  NotAFan,
  NonIntegralVertex,
  NotComplete,
  RecessionNotFan,
  NotAVertex,
  // buildings
  NonIntegerValues,
  LevelMismatch,
  NotInLink,
  ValuesOutOfRange,
  IndexOutOfRange,
  // bundle
  OutsideSupport,
  NoCoveringCone,
  ShapeMismatch,
  // ppoly
  ArityMismatch,
  ConditionIFailed,
  ConditionIIFailed,
  ComplexMismatch,
  // chern
  OutsideStar,
  // io
  SchemaError,
  Unsupported,
  InvalidArgument,
  InternalError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toricdvr

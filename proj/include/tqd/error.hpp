#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tqd {

enum class ErrorCode {
  NotSymmetric,
  DimensionZero,
  NonPositiveBeta,
  InvalidState,
  NonPositiveTemperature,
  InvalidParameter,
  LengthTooLarge,
  ZeroExchange,
  NoRoot,
  QuadratureFailure,
  NonUniformGrid,
  HolesPresent,
  AllZero,
  ExtremumOnBoundary,
  ConvergenceFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tqd

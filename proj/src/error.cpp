#include "tqd/error.hpp"

namespace tqd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionZero: return "DimensionZero";
    case ErrorCode::NonPositiveBeta: return "NonPositiveBeta";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::LengthTooLarge: return "LengthTooLarge";
    case ErrorCode::ZeroExchange: return "ZeroExchange";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::HolesPresent: return "HolesPresent";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::ExtremumOnBoundary: return "ExtremumOnBoundary";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "Unknown";
}

}  // namespace tqd

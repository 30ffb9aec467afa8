#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodalgen {

enum class ErrorCode {
  DivisionByZeroSeries,
  NonInvertibleLeadingCoefficient,
  PositiveValuationRequired,
  UnitConstantTermRequired,
  NegativeValuationUnsupported,
  BaseValuationMustBeOne,
  OutOfPrecision,
  OddWeightUnsupported,
  DuplicateAbscissa,
  InvalidProfile,
  IoFailure,
  FormatVersionMismatch,
  InsufficientDegrees,
  InconsistentOverdetermination,
  UnknownKind,
  NonPolynomialResidual,
  NonIntegralEulerCharacteristic,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace nodalgen

#include "nodalgen/rational.hpp"

#include "nodalgen/error.hpp"

#include <cctype>

namespace nodalgen {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::DivisionByZeroSeries: return "DivisionByZeroSeries";
  case ErrorCode::NonInvertibleLeadingCoefficient: return "NonInvertibleLeadingCoefficient";
  case ErrorCode::PositiveValuationRequired: return "PositiveValuationRequired";
  case ErrorCode::UnitConstantTermRequired: return "UnitConstantTermRequired";
  case ErrorCode::NegativeValuationUnsupported: return "NegativeValuationUnsupported";
  case ErrorCode::BaseValuationMustBeOne: return "BaseValuationMustBeOne";
  case ErrorCode::OutOfPrecision: return "OutOfPrecision";
  case ErrorCode::OddWeightUnsupported: return "OddWeightUnsupported";
  case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
  case ErrorCode::InvalidProfile: return "InvalidProfile";
  case ErrorCode::IoFailure: return "IoFailure";
  case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
  case ErrorCode::InsufficientDegrees: return "InsufficientDegrees";
  case ErrorCode::InconsistentOverdetermination: return "InconsistentOverdetermination";
  case ErrorCode::UnknownKind: return "UnknownKind";
  case ErrorCode::NonPolynomialResidual: return "NonPolynomialResidual";
  case ErrorCode::NonIntegralEulerCharacteristic: return "NonIntegralEulerCharacteristic";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0)
    throw Error(ErrorCode::ParseError, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+'))
    ++i;
  if (i == text.size())
    throw Error(ErrorCode::ParseError, "empty integer '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(text) + "'");
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return BigInt(digits, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_bigint(text));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den <= 0)
    throw Error(ErrorCode::ParseError, "denominator must be positive in '" + std::string(text) + "'");
  return make_rational(parse_bigint(text.substr(0, slash)), den);
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

} // namespace nodalgen

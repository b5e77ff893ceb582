#include "gframe/error.hpp"

namespace gframe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::TooManyRows: return "TooManyRows";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::KappaOddWithModdP: return "KappaOddWithModdP";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotEvenPrimePower: return "NotEvenPrimePower";
    case ErrorKind::QMinusOneNotPrime: return "QMinusOneNotPrime";
    case ErrorKind::QPlusOneNotPrime: return "QPlusOneNotPrime";
    case ErrorKind::MNotOddDivisor: return "MNotOddDivisor";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace gframe

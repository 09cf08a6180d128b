#include "ffexpand/errors.hpp"

namespace ffexpand {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::NotBivariate: return "NotBivariate";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::Diagonal: return "Diagonal";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::ConstantQ: return "ConstantQ";
    case ErrorKind::NotAdditiveShape: return "NotAdditiveShape";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotAbsolutelyIrreducible: return "NotAbsolutelyIrreducible";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DependentGH: return "DependentGH";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ffexpand

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffexpand {

enum class ErrorKind {
  NonPrime,
  SizeCapExceeded,
  DivisionByZero,
  MixedFields,
  MissingVariable,
  NotBivariate,
  NotSymmetric,
  Diagonal,
  DegreeTooLarge,
  ConstantQ,
  NotAdditiveShape,
  DegenerateCurve,
  DegreeCapExceeded,
  ZeroPolynomial,
  NotAbsolutelyIrreducible,
  SymmetryViolation,
  ConvergenceFailure,
  DependentGH,
  CharTooSmall,
  Parse,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type.
/// The kind is what callers dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ffexpand

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smallparts {

enum class ErrorKind {
  ZeroLeadingCoefficient,
  NonIntegralExponent,
  IndivisibleExponent,
  DenominatorDivisibleByEll,
  ZeroInput,
  HalfIntegralWeightUnsupported,
  OracleCeilingExceeded,
  InsufficientPrecision,
  DecompositionMismatch,
  RecursionMismatch,
  PreconditionViolation,
  IdentityFailure,
  GuardExceeded,
  InvalidArgument,
  ParseError,
};

std::string to_string(ErrorKind kind);

/// Every failure raised by the library. `index` carries the offending
/// exponent index, required precision, or argument when the kind has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::int64_t index = 0)
      : std::runtime_error(to_string(kind) + ": " + message), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::int64_t index_;
};

}  // namespace smallparts

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsep {

enum class ErrorKind {
  NotPowerOfTwo,
  NormViolation,
  NotSquare,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  CapExceeded,
  IndexOutOfRange,
  EmptyRemainder,
  DimensionMismatch,
  BadWeights,
  BadLabel,
  BadN,
  BadParams,
  BadP,
  BadConfig,
  BinMismatch,
  DegenerateOrbit,
  Schema,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries an ErrorKind so callers can
/// branch on the cause without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsep

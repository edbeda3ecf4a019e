#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locus {

enum class ErrorCode {
  InvalidInput,
  EmptyInput,
  UnknownEdge,
  ParameterOutOfRange,
  ZeroLength,
  OffLocus,
  DegenerateOverlap,
  ChainViolation,
  InvalidNetwork,
  Disconnected,
  Connected,
  HypothesisViolated,
  VerificationExhausted,
  NotACycle,
  NotNonConvex,
  NotK4,
  MalformedCnf,
  TooLarge,
  RetryExhausted,
};

std::string_view to_string(ErrorCode code);

/// Error carrying a machine-readable code; every module throws this.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locus

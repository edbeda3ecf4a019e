#include "locus/error.hpp"

namespace locus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::OffLocus: return "OffLocus";
    case ErrorCode::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorCode::ChainViolation: return "ChainViolation";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::Connected: return "Connected";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::VerificationExhausted: return "VerificationExhausted";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotNonConvex: return "NotNonConvex";
    case ErrorCode::NotK4: return "NotK4";
    case ErrorCode::MalformedCnf: return "MalformedCnf";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
  }
  return "Unknown";
}

}  // namespace locus

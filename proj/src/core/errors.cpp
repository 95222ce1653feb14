#include "errors.hpp"

namespace specband {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::OracleOverflow: return "OracleOverflow";
    case ErrorKind::InfeasibleBranch: return "InfeasibleBranch";
    case ErrorKind::Breakdown: return "Breakdown";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace specband

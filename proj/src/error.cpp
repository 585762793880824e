#include "evwin/error.hpp"

namespace evwin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::DuplicateDate: return "DuplicateDate";
    case ErrorKind::EventOutsideRange: return "EventOutsideRange";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroMAD: return "ZeroMAD";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::ZeroL2: return "ZeroL2";
    case ErrorKind::ZeroBandwidth: return "ZeroBandwidth";
    case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::DegenerateResample: return "DegenerateResample";
    case ErrorKind::DegenerateDeviations: return "DegenerateDeviations";
    case ErrorKind::MethodOutputMismatch: return "MethodOutputMismatch";
    case ErrorKind::SolverNotConverged: return "SolverNotConverged";
    case ErrorKind::ZeroPreVariance: return "ZeroPreVariance";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace evwin

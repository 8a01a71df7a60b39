#include "hiertie/error.hpp"

namespace hiertie {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySpan: return "EmptySpan";
    case ErrorCode::TooManySlots: return "TooManySlots";
    case ErrorCode::RootInactive: return "RootInactive";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::QueryIsolated: return "QueryIsolated";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateQuery: return "DuplicateQuery";
    case ErrorCode::MissingTruth: return "MissingTruth";
    case ErrorCode::IncomparableCurves: return "IncomparableCurves";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownActor: return "UnknownActor";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hiertie

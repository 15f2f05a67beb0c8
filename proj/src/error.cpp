#include "solenoidk/error.hpp"

namespace solenoidk {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::NonSurjective: return "NonSurjective";
    case ErrorCode::NonExpanding: return "NonExpanding";
    case ErrorCode::InadmissibleGerm: return "InadmissibleGerm";
    case ErrorCode::NoFlattening: return "NoFlattening";
    case ErrorCode::NeverCovers: return "NeverCovers";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::DepthTooShallow: return "DepthTooShallow";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::IncompatibleEndo: return "IncompatibleEndo";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::NeedUserMatrices: return "NeedUserMatrices";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::NoWitnessFound: return "NoWitnessFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace solenoidk

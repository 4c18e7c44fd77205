#include "bluesky/error.hpp"

namespace bluesky {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::NotInPositiveHalf: return "NotInPositiveHalf";
    case ErrorCode::EscapedTube: return "EscapedTube";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotACircleMap: return "NotACircleMap";
    case ErrorCode::NotExpandingInTheta: return "NotExpandingInTheta";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

}  // namespace bluesky

#include "inscom/error.h"

namespace inscom {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownId: return "unknown-id";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNoCodedBlocks: return "no-coded-blocks";
    case ErrorCode::kMalformedSideInfo: return "malformed-side-info";
    case ErrorCode::kEmptyMask: return "empty-mask";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kTruncatedData: return "truncated-data";
    case ErrorCode::kUnsupportedMaxval: return "unsupported-maxval";
    case ErrorCode::kInvalidMaskValue: return "invalid-mask-value";
    case ErrorCode::kMissingField: return "missing-field";
    case ErrorCode::kTypeMismatch: return "type-mismatch";
    case ErrorCode::kInvariantViolation: return "invariant-violation";
    case ErrorCode::kSpecInfeasible: return "spec-infeasible";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

bool IsIoError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kTruncatedData:
    case ErrorCode::kUnsupportedMaxval:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      message_(message) {}

}  // namespace inscom

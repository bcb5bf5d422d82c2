#ifndef INSCOM_ERROR_H_
#define INSCOM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace inscom {

enum class ErrorCode {
  kUnknownId,
  kDimensionMismatch,
  kInvalidArgument,
  kNoCodedBlocks,
  kMalformedSideInfo,
  kEmptyMask,
  kMalformedHeader,
  kTruncatedData,
  kUnsupportedMaxval,
  kInvalidMaskValue,
  kMissingField,
  kTypeMismatch,
  kInvariantViolation,
  kSpecInfeasible,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for the error kinds the CLI reports as I/O failures (exit code 2);
// every other kind is a validation failure (exit code 1).
bool IsIoError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the error-kind prefix that what() carries.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace inscom

#endif  // INSCOM_ERROR_H_

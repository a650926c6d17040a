#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ivmd {

enum class ErrorCode {
  kDomain,
  kOutOfUnitRange,
  kWeightSum,
  kWeightLength,
  kLengthMismatch,
  kEmptyInput,
  kNoRootInBracket,
  kBandOutOfRange,
  kTooShort,
  kSingularCovariance,
  kNotEnoughClasses,
  kChannelMismatch,
  kDegenerateFeatures,
  kDimensionMismatch,
  kShape,
  kParse,
  kChannelMissing,
  kLabelMismatch,
  kNotEnoughTrials,
  kConfig,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace ivmd

#pragma once

#include <stdexcept>
#include <string>

namespace delone {

/// Failure categories shared by the library, the CLI and the Python module.
enum class ErrorCode {
  kFieldMismatch,
  kInvalidArgument,
  kParse,
  kNotPermutation,
  kDisconnected,
  kNonPrimitive,
  kIncompleteExpansion,
  kRatioRational,
  kPrecondition,
  kSize,
  kMalformedCertificate,
  kCapExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delone

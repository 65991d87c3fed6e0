#pragma once

#include <stdexcept>
#include <string>

namespace rsidx {

enum class StatusCode {
  kOk = 0,
  kInvalidArgument,
  kOrderViolation,
  kDomainViolation,
  kEmptyInput,
  kCapacityExceeded,
  kIoError,
  kFormatError,
  kChecksumMismatch,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(StatusCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  StatusCode code() const { return code_; }

 private:
  StatusCode code_;
};

[[noreturn]] inline void raise(StatusCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rsidx

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stonedual {

enum class ErrorCode {
  MalformedDescriptor,
  MalformedMorphism,
  ForeignElement,
  DomainMismatch,
  NotASubset,
  NotOpen,
  UnrepresentableCO,
  UnrepresentableIdeal,
  FiniteSupportOnNonFcBlock,
  EnumerationUnsupported,
  NotValidated,
  NotZlba,
  LbaConditionFailed,
  FiniteBackendOnly,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the engine carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stonedual

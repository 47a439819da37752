#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcmap {

enum class ErrorKind {
  kInvalidInput,
  kResolutionExhausted,
  kResourceLimit,
  kAccuracyNotReached,
  kSolverDiverged,
  kBuildDegenerate,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so the
/// CLI can map it onto a structured report and an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::kInvalidInput, message);
}

}  // namespace arcmap

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kp {

// Failure categories. The CLI reports these verbatim in its error JSON.
enum class ErrorKind {
  kInvalidInput,
  kDomain,
  kGridMismatch,
  kStepFailure,
  kUntrusted,
  kIo,
  kConfig,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the time integrators; carries the time at which the step failed.
class StepFailure : public Error {
 public:
  StepFailure(double time, const std::string& message);

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace kp

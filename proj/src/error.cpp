#include "kp/error.hpp"

namespace kp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid_input";
    case ErrorKind::kDomain: return "domain_error";
    case ErrorKind::kGridMismatch: return "grid_mismatch";
    case ErrorKind::kStepFailure: return "step_failure";
    case ErrorKind::kUntrusted: return "untrusted";
    case ErrorKind::kIo: return "io_error";
    case ErrorKind::kConfig: return "config_error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

StepFailure::StepFailure(double time, const std::string& message)
    : Error(ErrorKind::kStepFailure, message), time_(time) {}

}  // namespace kp

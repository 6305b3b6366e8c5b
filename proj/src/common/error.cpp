#include "zsc/common/error.hpp"

namespace zsc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::FixtureMiss: return "fixture-miss";
    case ErrorKind::BackendUnavailable: return "backend-unavailable";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::EmptyResponse: return "empty-response";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Invariant: return "invariant";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Schema:
      return 2;
    case ErrorKind::FixtureMiss:
      return 3;
    case ErrorKind::BackendUnavailable:
    case ErrorKind::Timeout:
    case ErrorKind::Protocol:
    case ErrorKind::EmptyResponse:
      return 4;
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Numerical:
    case ErrorKind::Invariant:
      return 5;
  }
  return 5;
}

}  // namespace zsc

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsc {

enum class ErrorKind {
  Input,               // unreadable/invalid user input (files, config)
  Schema,              // malformed JSON documents (fixtures, manifests)
  FixtureMiss,         // replay store has no record for a request
  BackendUnavailable,  // oracle service down or unreachable
  Timeout,
  Protocol,            // backend answered but violated the wire contract
  EmptyResponse,
  Parse,               // oracle text could not be parsed into structure
  Validation,          // parsed structure violates a domain invariant
  Numerical,
  Invariant,           // internal contract violated
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error kind: 2 input, 3 fixture miss,
/// 4 backend unavailable, 5 internal invariant violation.
int exit_code(ErrorKind kind);

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

}  // namespace zsc

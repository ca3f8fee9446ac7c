#pragma once

#include <stdexcept>
#include <string>

namespace vgit {

/// Malformed or inconsistent input: bad dimensions, empty sets, schema
/// violations. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that has no answer in the model, e.g. a chamber
/// query on a configuration whose whole cone is an improper wall. The CLI
/// maps these to exit code 1 and reports `code()`.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace vgit

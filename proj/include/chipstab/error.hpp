#pragma once

#include <stdexcept>
#include <string>

namespace chipstab {

// Raised for invalid input or a violated precondition. `code` is a stable,
// machine-readable identifier used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// A certification that is guaranteed by theory failed on a concrete
// instance. Either the input violates a hidden hypothesis or there is a bug;
// it must never be swallowed.
class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(const std::string& message)
      : Error("theorem_violation", message) {}
};

}  // namespace chipstab

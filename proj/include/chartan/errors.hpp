#pragma once

#include <stdexcept>
#include <string>

namespace chartan {

/// Malformed user input: syntax errors, unknown names, bad files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent computations that must agree did not.
class CrossCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The input sits on a mathematical degeneracy the operation cannot handle.
/// `code` is a stable identifier such as "DEGENERATE" or "ODD_SQUARE_CLASS".
class DegeneracyError : public std::domain_error {
 public:
  DegeneracyError(std::string code, const std::string& what)
      : std::domain_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace chartan

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdiag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (bad type/rank, root not
/// in the system, index out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two diagrams from different systems, or an operation applied in the wrong
/// monoid (e.g. `add` on binary diagrams).
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis or stated precondition does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed a hard size cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdiag

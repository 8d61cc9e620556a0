#pragma once

#include <stdexcept>
#include <string>

namespace clr {

// Bad arguments or malformed input. The CLI maps this to exit code 2.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Parse failure in an input file, carrying the 1-based line number.
struct InputError : DomainError {
  InputError(int line, const std::string& msg)
      : DomainError("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

// A request that would exceed the supported problem size.
struct ResourceError : DomainError {
  using DomainError::DomainError;
};

// An iterative method failed to reach its tolerance (exit code 3).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked mathematical invariant did not hold (exit code 4).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace clr

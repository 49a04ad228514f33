#pragma once

#include <stdexcept>
#include <string>

namespace codecap {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, domain violations, malformed specs. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message carries "path:line:" context.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Problem exceeds an exact-computation cap or has no feasible instance.
/// CLI exit code 3.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The code is {0}; minimum distance is undefined.
class DegenerateCodeError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

}  // namespace codecap

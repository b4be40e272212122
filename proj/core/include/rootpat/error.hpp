#pragma once

#include <stdexcept>
#include <string>

namespace rootpat {

/// Raised for invalid input: malformed specs, violated preconditions,
/// mismatched fields.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a freshly built certificate fails its own re-verification.
/// This always indicates a bug in the library, never bad input.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rootpat

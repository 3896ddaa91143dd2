#pragma once

#include <stdexcept>
#include <string>

namespace catalynet {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on numeric input was violated (bad index, out-of-range angle,
// non-positive quantity where a positive one is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncated Fock space could not hold a state to the requested accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Catalysis parameters push every normalizer towards zero (theta near pi/2).
class DegenerateCatalysis : public DomainError {
 public:
  using DomainError::DomainError;
};

// A bracketing or root search failed to find a sign change.
class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace catalynet

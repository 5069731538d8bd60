#pragma once

#include <stdexcept>
#include <string>

namespace uncertainty_lab {

// Every failure raised by the library derives from Error, so callers that
// only care about "did it work" can catch a single type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between operands (non-square, differing dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Precondition on values violated: non-Hermitian operator, bad parameter range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed or produced a result outside its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// State has too much weight near the Fock-space cutoff.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace uncertainty_lab

#pragma once

#include <stdexcept>
#include <string>

namespace vostokov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Not enough precision to certify a result.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// A coefficient was requested outside the guaranteed window of a truncated series.
class WindowError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

}  // namespace vostokov

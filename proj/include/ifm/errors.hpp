#pragma once

#include <stdexcept>
#include <string>

namespace ifm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
  public:
    using Error::Error;
};

class NoConvergence : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

// Raised by coefficient-based closed forms when a is (numerically) 1.
class DegenerateTransparency : public Error {
  public:
    using Error::Error;
};

// Raised when k1 > 1 and no zero-error input state exists.
class NoZeroErrorState : public Error {
  public:
    using Error::Error;
};

class InvalidSpec : public Error {
  public:
    using Error::Error;
};

}  // namespace ifm

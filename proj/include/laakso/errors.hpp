#pragma once

#include <stdexcept>
#include <string>

namespace laakso {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidJError : Error {
  using Error::Error;
};

struct TooLargeError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NotSymmetricError : Error {
  using Error::Error;
};

struct NoConvergenceError : Error {
  using Error::Error;
};

struct InsufficientDepthError : Error {
  using Error::Error;
};

struct UnclassifiablePieceError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

}  // namespace laakso
